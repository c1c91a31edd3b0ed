import itertools

import pytest

import rrcr

# one line per acceptance criterion, echoed in the terminal summary
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def cycle(n):
    return rrcr.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return rrcr.from_edge_list(n, list(itertools.combinations(range(n), 2)))


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def c6():
    return cycle(6)


@pytest.fixture
def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return rrcr.from_edge_list(10, outer + inner + spokes)


@pytest.fixture
def prism():
    # two triangles joined by a perfect matching
    return rrcr.from_edge_list(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


@pytest.fixture
def path3():
    return rrcr.from_edge_list(3, [(0, 1), (1, 2)])


@pytest.fixture
def c5_chord():
    # 5-cycle plus the chord {0, 2}; triangle profile (1, 1, 1, 0, 0)
    return rrcr.from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])


@pytest.fixture
def two_triangles():
    return rrcr.from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def k33():
    return rrcr.from_edge_list(6, [(u, v + 3) for u in range(3) for v in range(3)])


@pytest.fixture
def cube():
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return rrcr.from_edge_list(8, edges)
