import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rrcr
from rrcr.errors import EmptySource, EndpointOutOfRange, GraphFormatError, SelfLoop

from conftest import cycle
from oracle_utils import brute_sphere_sizes


def test_from_edge_list_k4(k4):
    assert k4.n == 4 and k4.m == 6
    assert list(k4.degrees()) == [3, 3, 3, 3]


def test_from_edge_list_degrees():
    g = rrcr.from_edge_list(3, [(0, 1)])
    assert list(g.degrees()) == [1, 1, 0]


def test_from_edge_list_rejects_self_loop():
    with pytest.raises(SelfLoop):
        rrcr.from_edge_list(2, [(0, 0)])


def test_from_edge_list_rejects_out_of_range():
    with pytest.raises(EndpointOutOfRange):
        rrcr.from_edge_list(3, [(0, 3)])
    with pytest.raises(EndpointOutOfRange):
        rrcr.from_edge_list(3, [(-1, 2)])


def test_from_edge_list_deduplicates():
    g = rrcr.from_edge_list(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert not g.has_edge(0, 2)


def test_adjacency_sorted_and_symmetric(k4, petersen):
    for g in (k4, petersen):
        for v in range(g.n):
            nbrs = g.neighbours(v)
            assert (np.diff(nbrs) > 0).all()
            for u in nbrs:
                assert v in g.neighbours(int(u))


def test_complement_k4(k4):
    assert rrcr.complement(k4).m == 0


def test_complement_empty_is_complete():
    g = rrcr.complement(rrcr.from_edge_list(5, []))
    assert g.m == 10
    assert list(g.degrees()) == [4] * 5


def test_complement_involution(c6):
    assert rrcr.complement(rrcr.complement(c6)) == c6


def test_complement_regular_degree(petersen):
    co = rrcr.complement(petersen)
    assert co.regular_degree() == 10 - 1 - 3


def test_sphere_sizes_c6(c6):
    rep = rrcr.sphere_sizes(c6, [0], 3)
    assert rep.sizes == (1, 2, 2, 1)
    assert rep.exhausted_at is None


def test_sphere_sizes_k4(k4):
    rep = rrcr.sphere_sizes(k4, [0], 2)
    assert rep.sizes == (1, 3, 0)
    assert rep.exhausted_at == 2


def test_sphere_sizes_petersen_matches_brute_force(petersen):
    rep = rrcr.sphere_sizes(petersen, [0], 2)
    assert rep.sizes == brute_sphere_sizes(petersen, [0], 2) == (1, 3, 6)


def test_sphere_sizes_multi_source(c6):
    rep = rrcr.sphere_sizes(c6, [0, 3], 3)
    assert rep.sizes == brute_sphere_sizes(c6, [0, 3], 3)
    assert rep.sizes[0] == 2


def test_sphere_sizes_empty_source(c6):
    with pytest.raises(EmptySource):
        rrcr.sphere_sizes(c6, [], 2)


def test_diameter_values(k4, c6, two_triangles):
    assert rrcr.diameter(k4) == 1
    assert rrcr.diameter(c6) == 3
    assert math.isinf(rrcr.diameter(two_triangles))


def test_degree_profile(k4, c6, petersen):
    p = rrcr.VertexPartition([[0], [1, 2, 3]])
    assert list(rrcr.degree_profile(k4, 0, p)) == [0, 3]
    p6 = rrcr.VertexPartition([[0, 3], [1, 2, 4, 5]])
    assert list(rrcr.degree_profile(c6, 0, p6)) == [0, 2]
    assert list(rrcr.degree_profile(petersen, 4, rrcr.VertexPartition.trivial(10))) == [3]


@st.composite
def random_graphs(draw, max_n=24):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picked = draw(st.lists(st.sampled_from(pairs), max_size=60)) if pairs else []
    return rrcr.from_edge_list(n, picked)


@settings(max_examples=40, deadline=None)
@given(random_graphs())
def test_degree_sum_is_twice_edge_count(g):
    assert int(g.degrees().sum()) == 2 * g.m


@settings(max_examples=25, deadline=None)
@given(random_graphs(max_n=12), st.randoms(use_true_random=False))
def test_diameter_is_relabelling_invariant(g, pyrandom):
    perm = list(range(g.n))
    pyrandom.shuffle(perm)
    assert rrcr.diameter(rrcr.apply_permutation(g, perm)) == rrcr.diameter(g)


@settings(max_examples=25, deadline=None)
@given(random_graphs(max_n=12))
def test_complement_involution_property(g):
    assert rrcr.complement(rrcr.complement(g)) == g


def test_sphere_prefix_sums_bounded():
    g = cycle(9)
    rep = rrcr.sphere_sizes(g, [0, 1], 6)
    balls = rep.ball_sizes()
    assert all(b <= g.n for b in balls)
    assert rep.sizes[1] <= 2 * 2  # |S_1(U)| <= d |U| on regular graphs


def test_text_format_round_trip(tmp_path, petersen):
    path = tmp_path / "g.txt"
    rrcr.write_graph(petersen, path)
    text = path.read_text()
    again = rrcr.read_graph(path)
    assert again == petersen
    rrcr.write_graph(again, path)
    assert path.read_text() == text  # bit-exact round trip


def test_text_format_layout(k4):
    text = rrcr.graph_to_text(k4)
    lines = text.splitlines()
    assert lines[0] == "4 6"
    assert lines[1:] == ["0 1", "0 2", "0 3", "1 2", "1 3", "2 3"]
    assert text.endswith("\n")


def test_text_format_comments_allowed():
    g = rrcr.graph_from_text("# a comment\n3 1\n# another\n0 2\n")
    assert g.m == 1 and g.has_edge(0, 2)


@pytest.mark.parametrize("bad", [
    "", "3\n", "3 2\n0 1\n", "3 1\n1 0\n", "3 1\n0 0\n", "3 1\n0 3\n",
    "3 2\n0 1\n0 1\n",
])
def test_text_format_rejects_malformed(bad):
    with pytest.raises(GraphFormatError):
        rrcr.graph_from_text(bad)


def test_apply_permutation_preserves_structure(petersen):
    perm = np.roll(np.arange(10), 3)
    h = rrcr.apply_permutation(petersen, perm)
    assert h.m == petersen.m
    assert sorted(h.degrees()) == sorted(petersen.degrees())


def test_graph_is_immutable(k4):
    with pytest.raises(ValueError):
        k4.indices[0] = 5
