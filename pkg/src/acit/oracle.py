"""Brute-force reference implementation and weight-function checks.

This is the ground truth the acceptance suite measures the solver against:
intersection is decided by making the hull explicit (every facet) and
running a single LP feasibility question, and closest pairs are re-derived
with multi-seed agreement.  Everything here is deliberately simple and
desk-scale only.

The module also checks that the distance weight function w(Q) = squared
distance between conv(Q) and the halfspace intersection behaves like an
LP-type objective: monotone under adding points, supported on bases of at
most d points, and local.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Decision
from .numerics import eq, le, lt, sign, vector_is_exact
from .smalllp import (
    ClosestPair, InfeasibleError, Intersecting, as_constraints,
    closest_pair_vh, closest_pair_vh_direct, enumerate_facets, feasible_point,
)

DESK_MAX_SIZE = 64
DESK_MAX_DIM = 4


def _desk_guard(n: int, m: int, d: int):
    if n > DESK_MAX_SIZE or m > DESK_MAX_SIZE or d > DESK_MAX_DIM:
        raise ValueError("oracle is desk-scale only (n, m <= 64, d <= 4)")


def oracle_decide(points, halfspaces) -> Decision:
    """INTERSECT or DISJOINT via explicit facets plus one LP feasibility."""
    pts = [tuple(p) for p in points]
    cons = as_constraints(halfspaces)
    _desk_guard(len(pts), len(cons), len(pts[0]))
    facets = enumerate_facets(pts)
    x = feasible_point(facets + cons)
    return Decision.INTERSECT if x is not None else Decision.DISJOINT


def oracle_closest(points, halfspaces, seeds=(0, 1, 2)) -> ClosestPair:
    """Closest pair for a disjoint instance, with multi-seed agreement.

    In exact mode all seeds must return the identical pair (the solvers
    tie-break lexicographically, so this is a real consistency check).
    """
    pts = [tuple(p) for p in points]
    cons = as_constraints(halfspaces)
    _desk_guard(len(pts), len(cons), len(pts[0]))
    if oracle_decide(pts, cons) is Decision.INTERSECT:
        raise InfeasibleError("oracle_closest requires a disjoint instance")
    exact = vector_is_exact(pts[0])
    results = [closest_pair_vh(pts, cons, seed) for seed in seeds]
    first = results[0]
    for other in results[1:]:
        if exact:
            if other.dist2 != first.dist2 or other.x != first.x or other.y != first.y:
                raise AssertionError("oracle seeds disagree on the closest pair")
        else:
            if not eq(other.dist2, first.dist2):
                raise AssertionError("oracle seeds disagree on the distance")
    return first


def hull_distance2(points, halfspaces):
    """The weight w(Q): squared distance of conv(Q) from the intersection.

    Routed through the combination-variable QP so degenerate hulls (single
    points, segments) are first-class.
    """
    res = closest_pair_vh_direct(points, halfspaces)
    if isinstance(res, Intersecting):
        p0 = tuple(points[0])
        return Fraction(0) if vector_is_exact(p0) else 0.0
    return res.dist2


@dataclass
class AxiomReport:
    trials: int = 0
    monotonicity_violations: list = field(default_factory=list)
    basis_violations: list = field(default_factory=list)
    locality_violations: list = field(default_factory=list)
    relaxed_basis_instances: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.monotonicity_violations or self.basis_violations
                    or self.locality_violations)


def _smallest_basis(Q, halfspaces, wQ, d):
    """Exhaustive search for B subset of Q, |B| <= d, with w(B) = w(Q)."""
    for size in range(1, min(d, len(Q)) + 1):
        for B in itertools.combinations(range(len(Q)), size):
            wB = hull_distance2([Q[i] for i in B], halfspaces)
            if eq(wB, wQ):
                return list(B)
    return None


def check_lp_type_axioms(points, halfspaces, trials: int = 100,
                         seed: int = 0) -> AxiomReport:
    """Random-chain check of monotonicity, basis existence and locality.

    Chains Q subset Q+{c} are drawn with conv(Q) disjoint from the
    halfspace intersection; the basis search enumerates all subsets of size
    at most d, and falls back to d+1 (recorded, not absorbed) if needed.
    Violations are collected, not raised; on non-degenerate exact input the
    report comes back clean.
    """
    pts = [tuple(p) for p in points]
    cons = as_constraints(halfspaces)
    d = len(pts[0])
    _desk_guard(len(pts), len(cons), d)
    rng = random.Random(f"axioms:{seed}")
    report = AxiomReport()
    attempts = 0
    while report.trials < trials and attempts < trials * 20:
        attempts += 1
        k = rng.randint(1, min(len(pts) - 1, d + 3))
        idx = rng.sample(range(len(pts)), k + 1)
        Q = [pts[i] for i in idx[:-1]]
        c = pts[idx[-1]]
        wQ = hull_distance2(Q, cons)
        if sign(wQ) == 0:
            continue  # the chain must start disjoint
        report.trials += 1
        wQc = hull_distance2(Q + [c], cons)
        if not le(wQc, wQ):
            report.monotonicity_violations.append((tuple(Q), c))
            continue
        B = _smallest_basis(Q, cons, wQ, d)
        if B is None:
            B = _smallest_basis(Q, cons, wQ, d + 1)
            if B is not None:
                report.relaxed_basis_instances.append(tuple(Q))
            else:
                report.basis_violations.append(tuple(Q))
                continue
        Bpts = [Q[i] for i in B]
        wB = hull_distance2(Bpts, cons)
        if lt(wQc, wQ):
            wBc = hull_distance2(Bpts + [c], cons)
            if not lt(wBc, wB):
                report.locality_violations.append((tuple(Q), c))
    return report
