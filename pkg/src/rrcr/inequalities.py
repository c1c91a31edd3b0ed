"""Deterministic numeric verification of binomial product/anti-concentration
inequalities over exhaustive small ranges.

Everything that can be compared in exact integers is (square-root factors
are handled by squaring both sides); only the entropy-form check runs in
extended-precision floats, with a small relative guard band so that genuine
equality cases are not flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

__all__ = [
    "InequalityReport",
    "check_lemma_aux",
    "check_hypergeometric_anticoncentration",
]

# relative guard band for the float comparisons (documented in the report)
FLOAT_GUARD = 1e-12


@dataclass(frozen=True)
class InequalityReport:
    """Result of an exhaustive sweep.

    ``max_slack`` is the largest RHS-normalised ratio observed (1.0 means an
    exact equality case was hit); ``violations`` lists offending tuples and
    is expected to be empty.
    """

    name: str
    checked: int
    violations: List[Tuple] = field(default_factory=list)
    max_slack: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            "max_slack": self.max_slack,
            "ok": self.ok,
            "float_guard": FLOAT_GUARD,
        }


def _entropy_term(a: int, b: int):
    # log of a^a / (b^b (a-b)^(a-b)) in extended precision; 0^0 = 1
    la = np.longdouble(a)
    lb = np.longdouble(b)
    lc = np.longdouble(a - b)
    out = la * np.log(la)
    if b > 0:
        out -= lb * np.log(lb)
    if a - b > 0:
        out -= lc * np.log(lc)
    return out


def check_lemma_aux(range_max: int) -> InequalityReport:
    """Sweep the superadditivity of a -> log(a^a / (b^b (a-b)^(a-b))) over
    component-wise splits: for all 1 <= b_i < a_i <= range_max the combined
    term dominates the product of the split terms."""
    if range_max < 2:
        raise ValueError("range_max must be at least 2")
    checked = 0
    violations: List[Tuple] = []
    max_slack = -math.inf
    pairs = [(a, b) for a in range(2, range_max + 1) for b in range(1, a)]
    terms = {(a, b): _entropy_term(a, b)
             for a in range(2, 2 * range_max + 1) for b in range(1, a)}
    for a1, b1 in pairs:
        for a2, b2 in pairs:
            lhs = terms[(a1 + a2, b1 + b2)]
            rhs = terms[(a1, b1)] + terms[(a2, b2)]
            checked += 1
            gap = float(lhs - rhs)
            slack = math.exp(-gap) if gap < 700 else 0.0
            max_slack = max(max_slack, slack)
            if gap < -FLOAT_GUARD * max(1.0, abs(float(lhs))):
                violations.append((a1, b1, a2, b2))
    return InequalityReport(name="entropy_superadditivity", checked=checked,
                            violations=violations, max_slack=max_slack)


def _slack(lhs: int, rhs: int) -> float:
    # lhs <= rhs expected; ratio as float is fine for reporting purposes
    return lhs / rhs if rhs else math.inf


def check_hypergeometric_anticoncentration(range_max: int, k_max: int) -> InequalityReport:
    """Exact big-integer sweep of four binomial-coefficient bounds.

    With a = a1 + a2, b = b1 + b2 over 0 < b_i < a_i <= range_max:

      1. C(a1,b1) C(a2,b2) <= C(a,b)
      2. 9 [C(a1,b1) C(a2,b2)]^2 a b1(a1-b1) b2(a2-b2) <= 4 b(a-b) a1 a2 C(a,b)^2
         (the 2/3 sqrt(...) strengthening, squared into integers)

    and over 0 < b < a <= range_max, 1 <= k <= k_max:

      3. C(a,b)^(2k) (b(a-b))^(k-1) <= a^(k-1) C(ka,kb)^2
      4. C(2a,2b)^2 <= 4a C(a,b)^4
    """
    if range_max < 2 or k_max < 2:
        raise ValueError("range_max and k_max must be at least 2")
    checked = 0
    violations: List[Tuple] = []
    max_slack = 0.0

    comb = math.comb
    pairs = [(a, b) for a in range(2, range_max + 1) for b in range(1, a)]
    binom = {(a, b): comb(a, b) for a in range(1, 2 * range_max + 1) for b in range(0, a + 1)}

    for a1, b1 in pairs:
        c1 = binom[(a1, b1)]
        for a2, b2 in pairs:
            a, b = a1 + a2, b1 + b2
            prod = c1 * binom[(a2, b2)]
            whole = binom[(a, b)]
            checked += 1
            if prod > whole:
                violations.append(("product_bound", a1, b1, a2, b2))
            max_slack = max(max_slack, _slack(prod, whole))

            lhs = 9 * prod * prod * a * b1 * (a1 - b1) * b2 * (a2 - b2)
            rhs = 4 * b * (a - b) * a1 * a2 * whole * whole
            checked += 1
            if lhs > rhs:
                violations.append(("sqrt_strengthening", a1, b1, a2, b2))
            max_slack = max(max_slack, _slack(lhs, rhs))

    for a, b in pairs:
        cab = binom[(a, b)]
        for k in range(1, k_max + 1):
            lhs = cab ** (2 * k) * (b * (a - b)) ** (k - 1)
            rhs = a ** (k - 1) * comb(k * a, k * b) ** 2
            checked += 1
            if lhs > rhs:
                violations.append(("power_bound", a, b, k))
            max_slack = max(max_slack, _slack(lhs, rhs))

        lhs = binom[(2 * a, 2 * b)] ** 2
        rhs = 4 * a * cab ** 4
        checked += 1
        if lhs > rhs:
            violations.append(("doubling_bound", a, b))
        max_slack = max(max_slack, _slack(lhs, rhs))

    return InequalityReport(name="binomial_anticoncentration", checked=checked,
                            violations=violations, max_slack=max_slack)
