"""Small-dimension exact solvers.

This module holds the workhorses the intersection solver is built from:

* a Seidel-style randomized incremental LP in dimension ``d`` (exact or
  float, seeded, with unboundedness detected through an exact adaptive
  bounding box),
* an exact phase-1 simplex for small standard-form systems (hull
  membership, Caratheodory bases, Farkas infeasibility certificates),
* a margin-maximizing interior-point LP for halfspace systems,
* facet enumeration for convex hulls of small point sets,
* a randomized incremental convex QP computing the closest pair between
  two H-polytopes (null-space KKT evaluation on the active set).

Constraints are plain linear inequalities ``<a, x> <= b``.  The normalized
``<z, x> = 1`` halfspaces of :mod:`acit.geometry` convert losslessly via
:meth:`LinearConstraint.from_halfspace`; the general form is needed here
because constraints through the origin (``b = 0``) are legal in an LP.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import (
    DegenerateGeometryError, GeometryError, Halfspace, Hyperplane, Side,
)
from .numerics import (
    Scalar, Vector, eq, is_exact, is_zero, le, lt, get_tolerance, sign,
    vdot, vnorm1, vnorm2, vsub, vector_is_exact, zero_vector,
)


class InfeasibleError(RuntimeError):
    """A constraint system required to be feasible is empty."""


class _InfeasibleLP(Exception):
    def __init__(self, keys=()):
        self.keys = tuple(keys)


class _NumericFailure(Exception):
    """Float-mode arithmetic lost a decision it cannot recover."""


@dataclass(frozen=True)
class LinearConstraint:
    """The closed halfspace {x : <a, x> <= b}."""

    a: Vector
    b: Scalar

    @property
    def dim(self) -> int:
        return len(self.a)

    @classmethod
    def from_halfspace(cls, h: Halfspace) -> "LinearConstraint":
        if h.side is Side.ORIGIN_SIDE:
            return cls(tuple(h.plane.z), _one_like(h.plane.z))
        return cls(tuple(-c for c in h.plane.z), -_one_like(h.plane.z))

    def to_halfspace(self) -> Halfspace:
        if is_zero(self.b):
            raise GeometryError("constraint boundary passes through the origin; "
                                "no normalized halfspace form exists")
        z = tuple(c / self.b for c in self.a)
        side = Side.ORIGIN_SIDE if sign(self.b) > 0 else Side.FAR_SIDE
        return Halfspace(Hyperplane(z), side)


def _one_like(v: Vector) -> Scalar:
    return Fraction(1) if vector_is_exact(v) else 1.0


def as_constraints(items) -> list:
    """Accept a mix of LinearConstraint and Halfspace objects.

    Exact rows are coerced to all-Fraction entries so that later divisions
    never fall into float through int/int.
    """
    out = []
    for it in items:
        if isinstance(it, Halfspace):
            it = LinearConstraint.from_halfspace(it)
        elif not isinstance(it, LinearConstraint):
            raise TypeError(f"not a constraint: {it!r}")
        if isinstance(it.b, int) or any(isinstance(v, int) for v in it.a):
            if vector_is_exact(it.a) and is_exact(it.b):
                it = LinearConstraint(tuple(Fraction(v) for v in it.a),
                                      Fraction(it.b))
        out.append(it)
    return out


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    optimum: Vector | None = None
    value: Scalar | None = None
    tight_constraints: tuple = ()


# ---------------------------------------------------------------------------
# Seidel's randomized incremental LP
# ---------------------------------------------------------------------------
#
# Rows are (a, b, key) triples meaning <a, x> <= b.  The feasible region is
# pre-intersected with the box |x_k| <= M, where M is an exact Cramer-style
# bound on the coordinates of every basic solution of the input system, so
# sub-LPs are always bounded.  A bounded input LP attains its optimum inside
# the box; genuine unboundedness is detected afterwards by re-solving with a
# grown box and comparing optimal values exactly.


def _integer_magnitude(x: Scalar) -> int:
    if isinstance(x, float):
        return max(1, int(abs(x)) + 1)
    f = Fraction(x)
    return max(abs(f.numerator), f.denominator, 1)


def _box_bound(rows, objective, exact: bool) -> Scalar:
    amax = 1
    for a, b in rows:
        for v in a:
            amax = max(amax, _integer_magnitude(v))
        amax = max(amax, _integer_magnitude(b))
    for v in objective:
        amax = max(amax, _integer_magnitude(v))
    d = len(objective)
    if exact:
        return Fraction(math.factorial(d + 2) * amax ** (d + 1) + 1)
    return 1e6 * float(amax)


def _violated(a: Vector, b: Scalar, x: Vector) -> bool:
    return sign(vdot(a, x) - b) > 0


def _solve_1d(rows, c, M):
    lo, hi = -M, M
    lo_key = hi_key = None
    for a, b, key in rows:
        av = a[0]
        s = sign(av)
        if s == 0:
            if sign(b) < 0:
                raise _InfeasibleLP((key,))
            continue
        bound = b / av
        if s > 0:
            if lt(bound, hi):
                hi, hi_key = bound, key
        else:
            if lt(lo, bound):
                lo, lo_key = bound, key
    if lt(hi, lo):
        raise _InfeasibleLP(tuple(k for k in (lo_key, hi_key) if k is not None))
    if sign(c[0]) > 0:
        return (lo,), ([lo_key] if lo_key is not None else [])
    if sign(c[0]) < 0:
        return (hi,), ([hi_key] if hi_key is not None else [])
    return (lo,), ([lo_key] if lo_key is not None else [])


def _normalize_row(a, b):
    """Scale an exact constraint row to primitive-integer form.

    Row scaling by a positive rational leaves the halfspace unchanged but
    keeps numerators and denominators from compounding through repeated
    projections, which is what makes the exact recursion affordable.
    """
    denom_lcm = 1
    for v in a:
        denom_lcm = denom_lcm * v.denominator // math.gcd(denom_lcm, v.denominator)
    denom_lcm = denom_lcm * b.denominator // math.gcd(denom_lcm, b.denominator)
    nums = [v.numerator * (denom_lcm // v.denominator) for v in a]
    bn = b.numerator * (denom_lcm // b.denominator)
    g = 0
    for v in nums:
        g = math.gcd(g, v)
    g = math.gcd(g, bn)
    if g <= 1:
        scale = Fraction(denom_lcm)
    else:
        scale = Fraction(denom_lcm, g)
    return tuple(v * scale for v in a), b * scale


def _project_row(a, b, piv_a, piv_b, k):
    coef = a[k] / piv_a[k]
    new_a = tuple(a[j] - coef * piv_a[j] for j in range(len(a)) if j != k)
    new_b = b - coef * piv_b
    if isinstance(new_b, Fraction):
        return _normalize_row(new_a, new_b)
    return new_a, new_b


def _box_corner(c, M):
    return tuple(-M if sign(ci) >= 0 else M for ci in c)


def _seidel(rows, c, M):
    d = len(c)
    if d == 1:
        return _solve_1d(rows, c, M)
    x = _box_corner(c, M)
    pivots: list = []
    for i, (a, b, key) in enumerate(rows):
        if not _violated(a, b, x):
            continue
        # optimum of the prefix plus this row lies on the row's boundary
        nz = [j for j in range(d) if sign(a[j]) != 0]
        if not nz:
            raise _InfeasibleLP((key,))
        k = max(nz, key=lambda j: abs(a[j]))
        sub_rows = []
        for aa, bb, kk in rows[:i]:
            pa, pb = _project_row(aa, bb, a, b, k)
            sub_rows.append((pa, pb, kk))
        sub_c = tuple(c[j] - (c[k] / a[k]) * a[j] for j in range(d) if j != k)
        y, sub_piv = _seidel(sub_rows, sub_c, M)
        rest = iter(y)
        full = [next(rest) if j != k else None for j in range(d)]
        xk = (b - sum(a[j] * full[j] for j in range(d) if j != k)) / a[k]
        full[k] = xk
        x = tuple(full)
        pivots = [key] + sub_piv
    return x, pivots


def _solve_boxed(cons, objective, seed, M):
    rng = random.Random(f"seidel:{seed}")
    order = list(range(len(cons)))
    rng.shuffle(order)
    rows = [(cons[i].a, cons[i].b, i) for i in order]
    return _seidel(rows, tuple(objective), M)


def _solve_lp_float(cons, c) -> LPResult:
    """Float-mode LP backend (HiGHS); exact mode keeps the Seidel solver."""
    from scipy.optimize import linprog
    if not cons:
        if all(v == 0.0 for v in c):
            return LPResult(LPStatus.OPTIMAL, optimum=tuple(0.0 for _ in c),
                            value=0.0)
        return LPResult(LPStatus.UNBOUNDED)
    A = np.array([r.a for r in cons], dtype=float)
    b = np.array([r.b for r in cons], dtype=float)
    res = linprog(np.asarray(c, dtype=float), A_ub=A, b_ub=b,
                  bounds=(None, None), method="highs")
    if res.status == 2:
        return LPResult(LPStatus.INFEASIBLE)
    if res.status == 3:
        return LPResult(LPStatus.UNBOUNDED)
    if res.status != 0:
        raise _NumericFailure(f"linprog failed: {res.message}")
    x = tuple(float(v) for v in res.x)
    slack = A @ res.x - b
    scale = np.abs(A).sum(axis=1) * max(1.0, float(np.abs(res.x).max())) + 1.0
    tight = tuple(int(i) for i in np.nonzero(np.abs(slack) <= 1e-7 * scale)[0])
    return LPResult(LPStatus.OPTIMAL, optimum=x, value=float(res.fun),
                    tight_constraints=tight)


def solve_lp(objective, constraints, shuffle_seed: int = 0) -> LPResult:
    """Minimize <objective, x> subject to the given constraints.

    Deterministic for a fixed ``shuffle_seed``.  Runs the exact randomized
    incremental solver when the data is rational; float data goes through
    the scipy backend.
    """
    cons = as_constraints(constraints)
    c = tuple(objective)
    if not c:
        raise ValueError("objective must have dimension >= 1")
    exact = vector_is_exact(c) and all(
        vector_is_exact(r.a) and is_exact(r.b) for r in cons)
    if not exact:
        return _solve_lp_float(cons, c)
    M = _box_bound([(r.a, r.b) for r in cons], c, exact)
    try:
        x, pivots = _solve_boxed(cons, c, shuffle_seed, M)
    except _InfeasibleLP:
        return LPResult(LPStatus.INFEASIBLE)
    value = vdot(c, x)
    if any(eq(abs(xk), M) for xk in x):
        # optimum touches the safety box: grow it and compare values
        try:
            x2, _ = _solve_boxed(cons, c, shuffle_seed, 4 * M)
        except _InfeasibleLP:  # pragma: no cover - box growth cannot lose points
            return LPResult(LPStatus.INFEASIBLE)
        if lt(vdot(c, x2), value):
            return LPResult(LPStatus.UNBOUNDED)
    tight = tuple(sorted(k for k in pivots if k is not None))
    return LPResult(LPStatus.OPTIMAL, optimum=x, value=value, tight_constraints=tight)


def feasible_point(constraints, shuffle_seed: int = 0):
    """A point satisfying all constraints, or None.

    Solved as max-slack: maximize t with <a,x> + t <= b, t <= 1; feasible
    iff the optimum t is >= 0.
    """
    cons = as_constraints(constraints)
    if not cons:
        return None
    d = cons[0].dim
    one = _one_like(cons[0].a)
    zero = one - one
    ext = [LinearConstraint(tuple(r.a) + (one,), r.b) for r in cons]
    ext.append(LinearConstraint(tuple(zero for _ in range(d)) + (one,), one))
    obj = tuple(zero for _ in range(d)) + (-one,)
    res = solve_lp(obj, ext, shuffle_seed)
    if res.status is not LPStatus.OPTIMAL or sign(res.optimum[d]) < 0:
        return None
    return res.optimum[:d]


def lex_min_point(constraints, dim: int, shuffle_seed: int = 0):
    """Lexicographically smallest feasible point (exact tie-break helper).

    Raises DegenerateGeometryError when some stage is unbounded below and
    InfeasibleError when the system is empty.
    """
    cons = as_constraints(constraints)
    fixed: list[LinearConstraint] = []
    coords: list = []
    one = _one_like(cons[0].a) if cons else Fraction(1)
    zero = one - one
    for k in range(dim):
        obj = tuple(one if j == k else zero for j in range(dim))
        res = solve_lp(obj, cons + fixed, shuffle_seed)
        if res.status is LPStatus.INFEASIBLE:
            raise InfeasibleError("lex_min_point: empty feasible set")
        if res.status is LPStatus.UNBOUNDED:
            raise DegenerateGeometryError(
                "lexicographic tie-break undefined on an unbounded optimal face")
        v = res.optimum[k]
        coords.append(v)
        fixed.append(LinearConstraint(obj, v))
        fixed.append(LinearConstraint(tuple(-o for o in obj), -v))
    return tuple(coords)


# ---------------------------------------------------------------------------
# Exact phase-1 simplex on standard-form systems  (A lam = b, lam >= 0)
# ---------------------------------------------------------------------------


def simplex_feasible(matrix_rows, rhs):
    """Basic feasible solution of ``A lam = b, lam >= 0`` or None.

    Bland's rule, so termination is unconditional; exact when the data is
    rational.  The returned solution is basic: at most ``len(rhs)`` nonzero
    entries.
    """
    r = len(matrix_rows)
    if r == 0:
        return []
    k = len(matrix_rows[0])
    T = []
    rhs2 = []
    for i in range(r):
        row = list(matrix_rows[i])
        b = rhs[i]
        if sign(b) < 0:
            row = [-v for v in row]
            b = -b
        T.append(row)
        rhs2.append(b)
    basis = list(range(k, k + r))  # artificial indices
    # reduced phase-1 cost for original columns: sum over rows
    wrow = [sum(T[i][j] for i in range(r)) for j in range(k)]
    wval = sum(rhs2)

    def pivot(pr, pc):
        nonlocal wval
        piv = T[pr][pc]
        T[pr] = [v / piv for v in T[pr]]
        rhs2[pr] = rhs2[pr] / piv
        for i in range(r):
            if i != pr and sign(T[i][pc]) != 0:
                f = T[i][pc]
                T[i] = [v - f * w for v, w in zip(T[i], T[pr])]
                rhs2[i] = rhs2[i] - f * rhs2[pr]
        if sign(wrow[pc]) != 0:
            f = wrow[pc]
            for j in range(k):
                wrow[j] = wrow[j] - f * T[pr][j]
            wval = wval - f * rhs2[pr]
        basis[pr] = pc

    while True:
        enter = next((j for j in range(k) if basis.count(j) == 0 and sign(wrow[j]) > 0),
                     None)
        if enter is None:
            break
        ratios = [(rhs2[i] / T[i][enter], basis[i], i)
                  for i in range(r) if sign(T[i][enter]) > 0]
        if not ratios:
            break  # phase-1 objective cannot be unbounded; defensive
        # smallest ratio, ties broken by smallest basis index (Bland)
        best = ratios[0]
        for cand in ratios[1:]:
            if lt(cand[0], best[0]) or (eq(cand[0], best[0]) and cand[1] < best[1]):
                best = cand
        pivot(best[2], enter)

    if sign(wval) > 0:
        return None
    # drive zero-valued artificials out of the basis where possible
    for i in range(r):
        if basis[i] >= k:
            col = next((j for j in range(k) if sign(T[i][j]) != 0), None)
            if col is not None:
                pivot(i, col)
    zero = rhs2[0] - rhs2[0] if rhs2 else Fraction(0)
    lam = [zero] * k
    for i in range(r):
        if basis[i] < k:
            lam[basis[i]] = rhs2[i]
    return lam


def farkas_certificate(constraints):
    """Multipliers y >= 0 with y^T A = 0 and y^T b = -1 for an empty system."""
    cons = as_constraints(constraints)
    d = cons[0].dim
    one = _one_like(cons[0].a)
    rows = [[c.a[j] for c in cons] for j in range(d)]
    rows.append([c.b for c in cons])
    rhs = [one - one] * d + [-one]
    y = simplex_feasible(rows, rhs)
    return None if y is None else tuple(y)


# ---------------------------------------------------------------------------
# Hull membership and Caratheodory bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HullMembership:
    inside: bool
    coefficients: tuple | None = None


def _membership_system(q: Vector, points) -> tuple:
    d = len(q)
    rows = [[p[i] for p in points] for i in range(d)]
    one = _one_like(q) if vector_is_exact(q) else 1.0
    rows.append([one] * len(points))
    rhs = list(q) + [one]
    return rows, rhs


def point_in_hull(q: Vector, points, strict: bool = False) -> HullMembership:
    """Is q a convex combination of the given points?

    Returns the combination on success (a basic solution, so at most d+1
    nonzero weights).  With ``strict=True`` membership means the interior of
    the hull, decided by searching for a supporting direction at q.
    """
    q = tuple(q)
    pts = [tuple(p) for p in points]
    if not pts:
        return HullMembership(False)
    exact = vector_is_exact(q) and all(vector_is_exact(p) for p in pts)
    if exact:
        rows, rhs = _membership_system(q, pts)
        lam = simplex_feasible(rows, rhs)
        if lam is None:
            return HullMembership(False)
        lam = tuple(lam)
    else:
        lam = _point_in_hull_float(q, pts)
        if lam is None:
            return HullMembership(False)
    if strict and not _hull_has_interior_at(q, pts):
        return HullMembership(False)
    return HullMembership(True, lam)


def _point_in_hull_float(q, pts):
    from scipy.optimize import linprog
    A = np.array(pts, dtype=float).T
    A = np.vstack([A, np.ones(len(pts))])
    b = np.concatenate([np.asarray(q, dtype=float), [1.0]])
    res = linprog(np.zeros(len(pts)), A_eq=A, b_eq=b, bounds=(0, None),
                  method="highs")
    if res.status != 0:
        return None
    lam = np.clip(res.x, 0.0, None)
    s = lam.sum()
    return tuple(float(v) for v in (lam / s if s > 0 else lam))


def support_direction(q: Vector, pts):
    """A nonzero u with <u, p - q> >= 0 for all p, or None.

    Such a u is the outward normal of a halfspace supported at q containing
    every point; it exists exactly when q is *not* interior to conv(pts).
    Found through one max-min LP over the box |u_j| <= 1: maximize t subject
    to <u, p - q> >= t; a negative optimum certifies interiority.
    """
    d = len(q)
    one = _one_like(q) if vector_is_exact(q) else 1.0
    zero = one - one
    # variables (u, t): t - <u, p - q> <= 0 per point, |u_j| <= 1
    cons = [LinearConstraint(vsub(q, p) + (one,), zero) for p in pts]
    for j in range(d):
        e = tuple(one if i == j else zero for i in range(d))
        cons.append(LinearConstraint(e + (zero,), one))
        cons.append(LinearConstraint(tuple(-v for v in e) + (zero,), one))
    obj = tuple(zero for _ in range(d)) + (-one,)
    res = solve_lp(obj, cons, shuffle_seed=0)
    if res.status is not LPStatus.OPTIMAL:  # pragma: no cover - box-bounded
        raise GeometryError("support-direction LP did not solve")
    t = res.optimum[d]
    if sign(t) < 0:
        return None
    u = res.optimum[:d]
    if any(sign(v) != 0 for v in u):
        return u
    # t = 0 attained by u = 0: fall back to per-axis probes for a witness
    probe_cons = [LinearConstraint(vsub(q, p), zero) for p in pts]
    box = []
    for j in range(d):
        e = tuple(one if i == j else zero for i in range(d))
        box.append(LinearConstraint(e, one))
        box.append(LinearConstraint(tuple(-v for v in e), one))
    for j in range(d):
        for sgn in (1, -1):
            obj = tuple((-one if sgn > 0 else one) if i == j else zero
                        for i in range(d))
            res = solve_lp(obj, probe_cons + box, shuffle_seed=j)
            if res.status is LPStatus.OPTIMAL and sign(-res.value) > 0:
                return res.optimum
    return None


def _hull_has_interior_at(q: Vector, pts) -> bool:
    return support_direction(q, pts) is None


def caratheodory_basis(q: Vector, points) -> list:
    """Subset B of the points, |B| <= d+1, with q in conv(B)."""
    q = tuple(q)
    pts = [tuple(p) for p in points]
    mem = point_in_hull(q, pts)
    if not mem.inside:
        raise GeometryError("caratheodory_basis: point is outside the hull")
    return [pts[i] for i, w in enumerate(mem.coefficients) if sign(w) > 0]


# ---------------------------------------------------------------------------
# Margin-maximizing interior point
# ---------------------------------------------------------------------------


class InteriorStatus(enum.Enum):
    INTERIOR = "interior"
    FLAT = "flat"
    EMPTY = "empty"


@dataclass(frozen=True)
class InteriorPoint:
    status: InteriorStatus
    point: Vector | None = None
    margin: Scalar | None = None
    farkas: tuple | None = None


def deep_interior_point(constraints, shuffle_seed: int = 0) -> InteriorPoint:
    """Point maximizing the minimum l1-scaled slack of ``<a,x> <= b``.

    The slack of row i at x is (b_i - <a_i, x>) / |a_i|_1, so the margin is
    rational whenever the data is (an l2 scaling would introduce square
    roots).  margin > 0 means full-dimensional interior, margin = 0 a flat
    but nonempty system, and an empty system is reported with a Farkas
    certificate.
    """
    cons = as_constraints(constraints)
    d = cons[0].dim
    one = _one_like(cons[0].a)
    zero = one - one
    ext = [LinearConstraint(tuple(r.a) + (vnorm1(r.a),), r.b) for r in cons]
    ext.append(LinearConstraint(tuple(zero for _ in range(d)) + (one,), one))
    obj = tuple(zero for _ in range(d)) + (-one,)
    res = solve_lp(obj, ext, shuffle_seed)
    if res.status is not LPStatus.OPTIMAL:  # pragma: no cover - always bounded
        raise GeometryError("interior-point LP did not solve")
    t = res.optimum[d]
    x = res.optimum[:d]
    s = sign(t)
    if s > 0:
        return InteriorPoint(InteriorStatus.INTERIOR, x, t)
    if s == 0:
        return InteriorPoint(InteriorStatus.FLAT, x, t - t)
    exact = all(vector_is_exact(r.a) and is_exact(r.b) for r in cons)
    cert = farkas_certificate(cons) if exact else None
    return InteriorPoint(InteriorStatus.EMPTY, farkas=cert)


# ---------------------------------------------------------------------------
# Facet enumeration
# ---------------------------------------------------------------------------


def _affine_rank(pts) -> int:
    base = pts[0]
    rows = [list(vsub(p, base)) for p in pts[1:]]
    d = len(base)
    rank = 0
    for col in range(d):
        piv = None
        best = None
        for i in range(rank, len(rows)):
            v = abs(rows[i][col])
            if sign(rows[i][col]) != 0 and (best is None or v > best):
                piv, best = i, v
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for i in range(len(rows)):
            if i != rank and sign(rows[i][col]) != 0:
                f = rows[i][col] / prow[col]
                rows[i] = [v - f * w for v, w in zip(rows[i], prow)]
        rank += 1
        if rank == d:
            break
    return rank


def _hull_2d_chain(pts):
    """Andrew's monotone chain; exact under rational comparisons."""

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    uniq = sorted(set(pts))
    if len(uniq) <= 2:
        return uniq
    lower: list = []
    for p in uniq:
        while len(lower) >= 2 and sign(cross(lower[-2], lower[-1], p)) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(uniq):
        while len(upper) >= 2 and sign(cross(upper[-2], upper[-1], p)) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_2d(pts):
    hull = _hull_2d_chain(pts)
    if len(hull) < 3:
        raise DegenerateGeometryError("hull of the point set is not 2-dimensional")
    out = []
    m = len(hull)
    for i in range(m):
        p, qp = hull[i], hull[(i + 1) % m]
        t = vsub(qp, p)
        n = (t[1], -t[0])  # outward for a counterclockwise chain
        b = vdot(n, p)
        if any(sign(vdot(n, r) - b) > 0 for r in hull):
            n, b = tuple(-v for v in n), -b
        out.append(LinearConstraint(n, b))
    return out


def _cofactor_normal(vectors):
    """Generalized cross product of d-1 vectors in R^d (exact or float)."""
    dm = len(vectors) + 1

    def minor_det(cols):
        k = len(cols)
        if k == 1:
            return vectors[0][cols[0]]
        total = None
        for i, c in enumerate(cols):
            sub = minor_det(cols[:i] + cols[i + 1:])
            term = vectors[k - 1][c] * sub
            if i % 2 == (k - 1) % 2:
                total = term if total is None else total + term
            else:
                total = -term if total is None else total - term
        return total

    normal = []
    all_cols = list(range(dm))
    for j in range(dm):
        cols = [c for c in all_cols if c != j]
        det = minor_det(cols)
        normal.append(det if j % 2 == 0 else -det)
    return tuple(normal)


def _canonical_facet_key(n, b):
    lead = next(v for v in n if sign(v) != 0)
    s = abs(lead)
    return tuple(v / s for v in n) + (b / s,)


def _facets_bruteforce_exact(pts, n, d):
    """Float-filtered d-tuple scan with exact confirmation of candidates."""
    Pf = np.array([[float(v) for v in p] for p in pts])
    scale = max(1.0, float(np.abs(Pf).max()))
    found = {}
    chunk = 65536
    combos = itertools.combinations(range(n), d)
    while True:
        batch = list(itertools.islice(combos, chunk))
        if not batch:
            break
        idx = np.array(batch)
        base = Pf[idx[:, 0]]
        vecs = Pf[idx[:, 1:]] - base[:, None, :]
        normals = np.empty((len(batch), d))
        cols = np.arange(d)
        for j in range(d):
            sub = vecs[:, :, cols != j]
            normals[:, j] = ((-1.0) ** j) * np.linalg.det(sub)
        offs = np.einsum("ij,ij->i", normals, base)
        sides = Pf @ normals.T - offs[None, :]
        delta = 1e-9 * (np.abs(normals).sum(axis=1) * scale + np.abs(offs) + 1.0)
        neg = (sides < -delta[None, :]).any(axis=0)
        pos = (sides > delta[None, :]).any(axis=0)
        for row in np.nonzero(~(neg & pos))[0]:
            subset = batch[row]
            base_pt = pts[subset[0]]
            vectors = [vsub(pts[i], base_pt) for i in subset[1:]]
            nvec = _cofactor_normal(vectors)
            if all(sign(v) == 0 for v in nvec):
                continue  # affinely dependent tuple
            b = vdot(nvec, base_pt)
            lo = hi = 0
            for p in pts:
                s = sign(vdot(nvec, p) - b)
                lo = min(lo, s)
                hi = max(hi, s)
                if lo < 0 and hi > 0:
                    break
            if lo < 0 and hi > 0:
                continue
            if hi > 0:
                nvec, b = tuple(-v for v in nvec), -b
            found[_canonical_facet_key(nvec, b)] = LinearConstraint(nvec, b)
    return list(found.values())


def _facets_qhull(pts, d):
    from scipy.spatial import ConvexHull
    from scipy.spatial import QhullError
    arr = np.array([[float(v) for v in p] for p in pts])
    try:
        hull = ConvexHull(arr)
    except QhullError as exc:
        raise DegenerateGeometryError(f"qhull rejected the point set: {exc}") from exc
    found = {}
    for eqn in hull.equations:
        n = tuple(float(v) for v in eqn[:d])
        b = -float(eqn[d])
        key = tuple(round(v, 12) for v in n) + (round(b, 12),)
        found[key] = LinearConstraint(n, b)
    return list(found.values())


def enumerate_facets(points) -> list:
    """Facets of conv(points) as constraints with conv(P) = {x : Ax <= b}.

    Every input point satisfies every returned constraint, and every
    returned boundary passes through at least d of the points.  Raises
    DegenerateGeometryError when the hull is not full-dimensional.
    """
    pts = [tuple(p) for p in points]
    n = len(pts)
    if n == 0:
        raise GeometryError("no points")
    d = len(pts[0])
    exact = all(vector_is_exact(p) for p in pts)
    if exact or d == 2:
        # float inputs at d >= 3 skip this scan: qhull detects flatness itself
        if _affine_rank(pts) < d:
            raise DegenerateGeometryError(
                "hull of the point set is not full-dimensional")
    if d == 2:
        return _facets_2d(pts)
    if exact:
        return _facets_bruteforce_exact(pts, n, d)
    return _facets_qhull(pts, d)


# ---------------------------------------------------------------------------
# Closest pair between two H-polytopes (convex QP, LP-type incremental)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosestPair:
    """x lives in the first (H-polytope) set, y in the second."""

    x: Vector
    y: Vector
    dist2: Scalar
    y_coefficients: tuple | None = None

    @property
    def distance(self) -> float:
        return math.sqrt(float(self.dist2))


@dataclass(frozen=True)
class Intersecting:
    witness: Vector
    coefficients: tuple | None = None


def _rref_solve(rows, rhs, ncols, exact: bool):
    """Particular solution + nullspace basis of a linear system, or None.

    Exact mode runs a rational reduced row echelon form (free variables at
    zero).  Float mode goes through least squares plus an SVD nullspace,
    with inconsistency judged against the data scale.
    """
    if not exact:
        return _lstsq_solve(rows, rhs, ncols)
    A = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    m = len(A)
    piv_cols = []
    r = 0
    for col in range(ncols):
        best, best_val = None, None
        for i in range(r, m):
            v = abs(A[i][col])
            if v != 0 and (best is None or v > best_val):
                best, best_val = i, v
        if best is None:
            continue
        A[r], A[best] = A[best], A[r]
        pr = A[r]
        inv = pr[col]
        A[r] = [v / inv for v in pr]
        for i in range(m):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [v - f * w for v, w in zip(A[i], A[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if A[i][ncols] != 0:
            return None  # inconsistent row 0 = c
    part = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        part[col] = A[i][ncols]
    free_cols = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, col in enumerate(piv_cols):
            vec[col] = -A[i][fc]
        basis.append(tuple(vec))
    return tuple(part), basis


def _lstsq_solve(rows, rhs, ncols):
    A = np.array([[float(v) for v in r] for r in rows])
    b = np.array([float(v) for v in rhs])
    sol, _, _, sv = np.linalg.lstsq(A, b, rcond=None)
    scale = max(1.0, float(np.abs(A).max()), float(np.abs(b).max()))
    resid = A @ sol - b
    if np.abs(resid).max() > 1e-7 * scale * max(1.0, float(np.abs(sol).max())):
        return None
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    smax = s.max() if len(s) else 0.0
    rank = int((s > max(1e-12, 1e-10 * smax)).sum()) if len(s) else 0
    basis = [tuple(float(v) for v in vh[i]) for i in range(rank, ncols)]
    return tuple(float(v) for v in sol), basis


def _uv_q_apply(d):
    """Half-gradient map for |u - v|^2 on z = (u, v)."""

    def q_apply(z):
        w = tuple(z[i] - z[d + i] for i in range(d))
        return w + tuple(-v for v in w)

    return q_apply


def _eq_minimize(eqs, dim_z, exact, q_apply):
    """Minimize the convex quadratic over an affine subspace.

    Null-space KKT step: parametrize the subspace, solve the projected
    normal equations (always consistent for an objective bounded below),
    fix free directions at zero.
    """
    if eqs:
        sol = _rref_solve([e.a for e in eqs], [e.b for e in eqs], dim_z, exact)
        if sol is None:
            raise _InfeasibleLP()
        zp, V = sol
    else:
        one = Fraction(1) if exact else 1.0
        zero = one - one
        zp = zero_vector(dim_z, exact)
        V = [tuple(one if i == j else zero for i in range(dim_z))
             for j in range(dim_z)]
    if not V:
        return zp
    QV = [q_apply(v) for v in V]
    M = [[vdot(V[i], QV[j]) for j in range(len(V))] for i in range(len(V))]
    g = [vdot(V[i], q_apply(zp)) for i in range(len(V))]
    sol = _rref_solve(M, [-gi for gi in g], len(V), exact)
    if sol is None:  # pragma: no cover - the system is always consistent
        raise _NumericFailure("singular KKT system")
    t, _ = sol
    z = list(zp)
    for j, vj in enumerate(V):
        if (t[j] != 0) if exact else (t[j] != 0.0):
            for i in range(dim_z):
                z[i] = z[i] + t[j] * vj[i]
    return tuple(z)


def _qp_rec(rows, eqs, dim_z, exact, q_apply):
    z = _eq_minimize(eqs, dim_z, exact, q_apply)
    for i, row in enumerate(rows):
        if _violated(row.a, row.b, z):
            z = _qp_rec(rows[:i], eqs + [row], dim_z, exact, q_apply)
    return z


def _qp_solve(rows, dim_z, seed, exact, q_apply):
    rng = random.Random(f"qp:{seed}")
    order = list(rows)
    rng.shuffle(order)
    return _qp_rec(order, [], dim_z, exact, q_apply)


def _uv_qp_solve_float(rows, d, seed):
    """Vectorized float path of the two-polytope QP.

    Same randomized incremental scheme as :func:`_qp_solve`, but violation
    scans run on a numpy constraint matrix and the equality-restricted
    minimization solves the small dense KKT system directly.
    """
    dim = 2 * d
    A = np.array([r.a for r in rows], dtype=float)
    b = np.array([r.b for r in rows], dtype=float)
    order = list(range(len(rows)))
    random.Random(f"qp:{seed}").shuffle(order)
    A = np.ascontiguousarray(A[order])
    b = np.ascontiguousarray(b[order])
    tol = get_tolerance()
    eye = np.eye(d)
    Q = np.block([[eye, -eye], [-eye, eye]])
    scale = max(1.0, float(np.abs(A).max()), float(np.abs(b).max()))

    def rec(limit, eq_rows):
        z = eq_minimize(eq_rows)
        start = 0
        while start < limit:
            viol = A[start:limit] @ z - b[start:limit]
            hits = np.nonzero(viol > tol)[0]
            if not len(hits):
                return z
            j = start + int(hits[0])
            arow, brow = A[j].copy(), float(b[j])
            z = rec(j, eq_rows + [(arow, brow)])
            # move-to-front: violated rows get seen first next time, which
            # keeps the expected number of restarts small (Welzl heuristic)
            A[1:j + 1] = A[:j]
            b[1:j + 1] = b[:j]
            A[0] = arow
            b[0] = brow
            start = j + 1
        return z

    def eq_minimize(eq_rows):
        if not eq_rows:
            return np.zeros(dim)
        Ae = np.array([r for r, _ in eq_rows])
        be = np.array([v for _, v in eq_rows])
        k = len(eq_rows)
        kkt = np.zeros((dim + k, dim + k))
        kkt[:dim, :dim] = Q
        kkt[:dim, dim:] = Ae.T
        kkt[dim:, :dim] = Ae
        rhs = np.concatenate([np.zeros(dim), be])
        try:
            sol = np.linalg.solve(kkt, rhs)  # fast path: nonsingular KKT
        except np.linalg.LinAlgError:
            sol, _, _, _ = np.linalg.lstsq(kkt, rhs, rcond=None)
        z = sol[:dim]
        if np.abs(Ae @ z - be).max() > 1e-7 * scale * max(1.0, float(np.abs(z).max())):
            raise _InfeasibleLP()
        return z

    z = rec(len(rows), [])
    return tuple(float(v) for v in z)


def _active_indices(rows, z, rel=1e-7):
    out = []
    for i, r in enumerate(rows):
        slack = abs(float(vdot(r.a, z) - r.b))
        scale = sum(abs(float(v)) for v in r.a) * max(
            1.0, max(abs(float(x)) for x in z)) + abs(float(r.b)) + 1.0
        if slack <= rel * scale:
            out.append(i)
    return out


def _kkt_verified(rows, active, z, dim_z, q_apply):
    """Exact global-optimality certificate for the convex QP: primal
    feasibility plus nonnegative multipliers on the active set."""
    for r in rows:
        if _violated(r.a, r.b, z):
            return False
    grad = q_apply(z)
    if all(sign(g) == 0 for g in grad):
        return True
    if not active:
        return False
    rows_sys = [[r.a[i] for r in active] for i in range(dim_z)]
    rhs = [-g for g in grad]
    mu = simplex_feasible(rows_sys, rhs)
    return mu is not None


def _qp_exact_with_filter(rows, dim_z, seed, q_apply_exact, q_apply_float,
                          float_solver=None):
    """Float presolve proposes an active set; an exact null-space solve plus
    an exact KKT check certify it.  Falls back to the fully exact
    incremental solver when the certificate fails."""
    rows_f = [LinearConstraint(tuple(float(v) for v in r.a), float(r.b))
              for r in rows]
    try:
        if float_solver is not None:
            zf = float_solver(rows_f, seed)
        else:
            zf = _qp_solve(rows_f, dim_z, seed, exact=False,
                           q_apply=q_apply_float)
        act = [rows[i] for i in _active_indices(rows_f, zf)]
        z = _eq_minimize(act, dim_z, exact=True, q_apply=q_apply_exact)
        if _kkt_verified(rows, act, z, dim_z, q_apply_exact):
            return z
    except (_InfeasibleLP, _NumericFailure, ZeroDivisionError):
        pass
    return _qp_solve(rows, dim_z, seed, exact=True, q_apply=q_apply_exact)


def closest_pair_hh(A, B, seed: int = 0, _assume_feasible: bool = False):
    """Closest pair between the H-polytopes ``/\\A`` and ``/\\B``.

    Solved as the convex QP  min |u - v|^2  over u in /\\A, v in /\\B by
    randomized constraint insertion with a null-space KKT solve on the
    active set.  Returns :class:`Intersecting` when the distance is zero.
    In exact mode the reported pair is the lexicographically smallest
    optimal (x, y), so the answer is seed-independent.
    """
    consA = as_constraints(A)
    consB = as_constraints(B)
    if not consA or not consB:
        raise ValueError("both constraint sets must be nonempty")
    d = consA[0].dim
    exact = all(vector_is_exact(r.a) and is_exact(r.b) for r in consA + consB)
    if not _assume_feasible:
        if feasible_point(consA, seed) is None:
            raise InfeasibleError("first H-polytope is empty")
        if feasible_point(consB, seed) is None:
            raise InfeasibleError("second H-polytope is empty")
    zero = Fraction(0) if exact else 0.0
    zrow = tuple(zero for _ in range(d))
    rows = [LinearConstraint(tuple(r.a) + zrow, r.b) for r in consA]
    rows += [LinearConstraint(zrow + tuple(r.a), r.b) for r in consB]
    d2 = 2 * d
    if exact:
        z = _qp_exact_with_filter(
            rows, d2, seed, _uv_q_apply(d), _uv_q_apply(d),
            float_solver=lambda rf, s: _uv_qp_solve_float(rf, d, s))
    else:
        z = _uv_qp_solve_float(rows, d, seed)
    u, v = z[:d], z[d:]
    w = vsub(u, v)
    dist2 = vnorm2(w)
    tol = get_tolerance()
    if (dist2 == 0) if exact else (float(dist2) <= tol * tol):
        wit = u if exact else tuple((a + b) / 2 for a, b in zip(u, v))
        return Intersecting(witness=wit)
    if exact:
        shifted = [LinearConstraint(r.a, r.b + vdot(r.a, w)) for r in consB]
        face_cons = consA + shifted
        active = [r.a for r in face_cons if vdot(r.a, u) == r.b]
        if _exact_rank(active, d) < d:
            # the optimal face is positive-dimensional: settle it by the
            # lexicographic tie-break so the answer is seed-independent
            u = lex_min_point(face_cons, d, seed)
        v = vsub(u, w)
    return ClosestPair(x=u, y=v, dist2=dist2)


def closest_pair_vh(points, H, seed: int = 0, with_coefficients: bool = True,
                    _assume_feasible: bool = False):
    """Closest pair between conv(points) and the H-polytope of ``H``.

    The hull side is made explicit through its facets, then the two-sided QP
    runs on H and the facet system.  The hull-side point comes back with its
    convex combination over the input points (skippable for internal calls
    that never read it).
    """
    pts = [tuple(p) for p in points]
    facets = enumerate_facets(pts)
    res = closest_pair_hh(H, facets, seed, _assume_feasible=_assume_feasible)
    if isinstance(res, Intersecting):
        coeff = None
        if with_coefficients:
            mem = point_in_hull(res.witness, pts)
            coeff = mem.coefficients if mem.inside else None
        return Intersecting(res.witness, coeff)
    coeff = None
    if with_coefficients:
        mem = point_in_hull(res.y, pts)
        coeff = mem.coefficients if mem.inside else None
    return ClosestPair(res.x, res.y, res.dist2, y_coefficients=coeff)


def closest_pair_vh_direct(points, H, seed: int = 0):
    """Closest pair between conv(points) and an H-polytope without facets.

    Works directly on the convex-combination variables, so lower-dimensional
    hulls (single points, segments, flats) are fine; this is the route the
    reference weight function and the degenerate-input path use.  Variables
    are z = (lam_1..lam_k, x_1..x_d) with objective |sum lam_i p_i - x|^2.
    """
    pts = [tuple(p) for p in points]
    consH = as_constraints(H)
    if not pts or not consH:
        raise ValueError("need points and halfspaces")
    k, d = len(pts), len(pts[0])
    exact = all(vector_is_exact(p) for p in pts) and all(
        vector_is_exact(r.a) and is_exact(r.b) for r in consH)
    if feasible_point(consH, seed) is None:
        raise InfeasibleError("H-polytope is empty")
    one = Fraction(1) if exact else 1.0
    zero = one - one
    dim_z = k + d
    rows = []
    for i in range(k):  # lam_i >= 0
        rows.append(LinearConstraint(
            tuple(-one if j == i else zero for j in range(dim_z)), zero))
    ones_lam = tuple(one if j < k else zero for j in range(dim_z))
    rows.append(LinearConstraint(ones_lam, one))
    rows.append(LinearConstraint(tuple(-v for v in ones_lam), -one))
    for r in consH:  # <a, x> <= b
        rows.append(LinearConstraint(
            tuple(zero for _ in range(k)) + tuple(r.a), r.b))

    def q_apply(z):
        w = tuple(sum(z[i] * pts[i][j] for i in range(k)) - z[k + j]
                  for j in range(d))
        return tuple(vdot(pts[i], w) for i in range(k)) + tuple(-v for v in w)

    def q_apply_float(z):
        w = tuple(sum(z[i] * float(pts[i][j]) for i in range(k)) - z[k + j]
                  for j in range(d))
        return tuple(sum(float(pts[i][j]) * w[j] for j in range(d))
                     for i in range(k)) + tuple(-v for v in w)

    if exact:
        z = _qp_exact_with_filter(rows, dim_z, seed, q_apply, q_apply_float)
    else:
        z = _qp_solve(rows, dim_z, seed, exact=False, q_apply=q_apply_float)
    lam = z[:k]
    x = z[k:]
    y = tuple(sum(lam[i] * pts[i][j] for i in range(k)) for j in range(d))
    dist2 = vnorm2(vsub(y, x))
    tol = get_tolerance()
    if (dist2 == 0) if exact else (float(dist2) <= tol * tol):
        return Intersecting(witness=y, coefficients=tuple(lam))
    return ClosestPair(x=x, y=y, dist2=dist2, y_coefficients=tuple(lam))
