"""Recursive intersection test with verifiable certificates.

``solve`` decides whether the convex hull of a point set meets an
intersection of halfspaces.  The strategy:

1. find a margin-maximizing interior point of the halfspace system (empty
   system -> immediate infeasibility certificate) and translate it to the
   origin, so the halfspace set becomes *embracing*;
2. if the origin now lies in the hull, that point is already a witness;
3. otherwise the point set is *avoiding* and the recursive ``test`` runs.

``test`` either returns the closest pair between hull and intersection
(disjoint case) or the closest pair between their polar counterparts
(intersecting case).  Above the base-case threshold it samples a net
N of the points, keeps the origin inside conv(N) when needed, and loops at
most 2d+1 times: each iteration recursively tests the polarized pair
(H*, N*) and either stops with an empty conflict set or grows N by the
conflicting elements.  Distances strictly improve between same-case
iterations, no intersecting iteration can follow a disjoint one, and the
loop bound can never be hit on valid input; all three facts are enforced as
runtime assertions.

Certificates are self-contained: a witness point with its convex
coefficients and per-halfspace slacks, a separating hyperplane with the
closest pair, or an infeasibility (Farkas) combination for an empty
halfspace system.  ``check_certificate`` re-verifies any of them against
the raw instance, in exact arithmetic when the instance is rational.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .geometry import (
    DegenerateGeometryError, Decision, GeometryError, Halfspace, HPolytope,
    Hyperplane, InvalidPolytopeError, Point, Side, Validity, VPolytope,
)
from .numerics import (
    Scalar, Vector, eq, get_tolerance, is_zero, lt, sign, vadd, vdot,
    vector_is_exact, vnorm2, vscale, vsub, zero_vector,
)
from .nets import (NetParams, augment_for_origin, net_sample_size,
                   origin_interior_kit, sample_net)
from .polar import (
    classify_halfspace_set, classify_point_set, polarize_halfspaces,
    polarize_points,
)
from .smalllp import (
    ClosestPair, InfeasibleError, InteriorStatus, Intersecting,
    LinearConstraint, LPStatus, as_constraints, closest_pair_vh,
    closest_pair_vh_direct, deep_interior_point, point_in_hull, solve_lp,
)


class LoopExhaustedError(RuntimeError):
    """The 2d+1 loop ran dry; impossible on valid input, so this is a bug.

    Carries the per-level iteration log for diagnosis.
    """

    def __init__(self, message, iteration_log):
        super().__init__(message)
        self.iteration_log = iteration_log


class StructureViolation(AssertionError):
    """A structural loop invariant failed (case order or strict progress)."""


class PreconditionError(GeometryError):
    """test() was entered without condition (1) or (2)."""


class ModeFailure(RuntimeError):
    """Float mode lost a decision; callers may retry in exact mode."""


class CheckLevel(enum.Enum):
    NONE = "none"
    STRUCTURE = "structure"   # loop length, case order (cheap, always sound)
    FULL = "full"             # + preconditions and strict progress (exact)


ALPHA_FACTOR = 12


def default_alpha(d: int) -> int:
    """Base-case threshold, shaped like d^4 log d with a tuned constant.

    Two competing pressures set the constant: the threshold must clear the
    net size plus its growth headroom by enough that nodes just above it do
    not trip the fallback guard, and the direct facet-plus-QP base case is
    cheap well into the thousands of constraints, so a generous threshold
    simply skips recursion levels that would cost more than they save.
    """
    s = net_sample_size(d)
    shaped = math.ceil(ALPHA_FACTOR * d ** 4 * math.log2(d + 1))
    return max(16, math.ceil(1.6 * (s + 3 * d + 3)), shaped)


@dataclass(frozen=True)
class AcitParams:
    seed: int = 0
    alpha: int | None = None          # default: default_alpha(d)
    net: NetParams | None = None      # default: NetParams.for_dimension(d)
    checks: CheckLevel = CheckLevel.STRUCTURE

    def resolve(self, d: int) -> "ResolvedParams":
        alpha = self.alpha if self.alpha is not None else default_alpha(d)
        if alpha < 16:
            raise ValueError("alpha must be at least 16")
        net = self.net if self.net is not None else NetParams.for_dimension(
            d, seed=self.seed)
        if net.eps != Fraction(1, d ** 4):
            raise ValueError("the net parameter eps must equal 1/d^4 exactly")
        return ResolvedParams(seed=self.seed, alpha=alpha, eps=net.eps,
                              net=net, checks=self.checks)


@dataclass(frozen=True)
class ResolvedParams:
    seed: int
    alpha: int
    eps: Fraction
    net: NetParams
    checks: CheckLevel


@dataclass
class LevelLog:
    depth: int
    case_tags: list = field(default_factory=list)
    conflict_sizes: list = field(default_factory=list)
    net_size: int = 0
    dims: tuple = ()


@dataclass
class SolveStats:
    mode: str = "exact"
    seed: int = 0
    depth_reached: int = 0
    levels: list = field(default_factory=list)
    base_cases: int = 0
    fallback_used: bool = False
    degenerate_used: bool = False
    decision: str | None = None

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "depth_reached": self.depth_reached,
            "base_cases": self.base_cases,
            "fallback_used": self.fallback_used,
            "degenerate_used": self.degenerate_used,
            "decision": self.decision,
            "levels": [
                {"depth": lv.depth, "case_tags": list(lv.case_tags),
                 "conflict_sizes": list(lv.conflict_sizes),
                 "net_size": lv.net_size, "sizes": list(lv.dims)}
                for lv in self.levels
            ],
        }


@dataclass
class SolveContext:
    """Per-solve bookkeeping: the frame translation and the iteration logs."""

    translation: Vector
    mode: str
    params: ResolvedParams
    depth: int = 0
    stats: SolveStats = field(default_factory=SolveStats)
    # origin kits per point set (id-keyed; the sets live for the whole solve)
    kit_cache: dict = field(default_factory=dict)

    def log_level(self, d: int, sizes, net_size: int) -> LevelLog:
        lv = LevelLog(depth=self.depth, net_size=net_size, dims=tuple(sizes))
        self.stats.levels.append(lv)
        self.stats.depth_reached = max(self.stats.depth_reached, self.depth)
        return lv

    def record_case(self, lv: LevelLog, tag: int, d: int, conflict_size: int):
        lv.case_tags.append(tag)
        lv.conflict_sizes.append(conflict_size)
        if len(lv.case_tags) > 2 * d + 1:
            raise LoopExhaustedError(
                f"loop exceeded {2 * d + 1} iterations at depth {lv.depth}",
                self.stats.levels)
        if tag == 2 and 1 in lv.case_tags:
            raise StructureViolation(
                "a primal (case 2) iteration followed a polar (case 1) one")


class TestKind(enum.Enum):
    DISJOINT = "disjoint"
    INTERSECT = "intersect"


@dataclass(frozen=True)
class TestResult:
    """DISJOINT carries the primal closest pair; INTERSECT the polar one.

    ``witness`` is a point of both primal sets when one is known directly
    (base case); for touching sets the polar pair degenerates and the
    witness is the only payload.
    """

    kind: TestKind
    pair: ClosestPair | None
    witness: Vector | None = None


class CertificateKind(enum.Enum):
    WITNESS = "witness"
    SEPARATOR = "separator"
    EMPTY_H = "empty_h"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    # witness payload
    point: Vector | None = None
    coefficients: tuple | None = None
    slacks: tuple | None = None
    # separator payload
    normal: Vector | None = None
    offset: Scalar | None = None
    pair_x: Vector | None = None
    pair_y: Vector | None = None
    dist2: Scalar | None = None
    y_coefficients: tuple | None = None
    # empty-system payload
    farkas: tuple | None = None

    @property
    def distance(self) -> float | None:
        return None if self.dist2 is None else math.sqrt(float(self.dist2))


@dataclass(frozen=True)
class SolveResult:
    decision: Decision
    certificate: Certificate
    stats: SolveStats


# ---------------------------------------------------------------------------
# The recursive test
# ---------------------------------------------------------------------------


def _halfspace_constraints(H: HPolytope) -> list:
    return [LinearConstraint.from_halfspace(h) for h in H.halfspaces]


def _assert_precondition(P: VPolytope, H: HPolytope):
    tag_p = classify_point_set(P)
    tag_h = classify_halfspace_set(H)
    ok = (tag_p is Validity.AVOIDING and tag_h is Validity.EMBRACING) or \
         (tag_p is Validity.EMBRACING and tag_h is Validity.AVOIDING)
    if not ok:
        raise PreconditionError(
            f"test() requires condition (1) or (2); got P={tag_p.value}, "
            f"H={tag_h.value}")
    if P.validity is not Validity.UNCLASSIFIED and P.validity is not tag_p:
        raise PreconditionError("carried point-set validity tag is wrong")
    if H.validity is not Validity.UNCLASSIFIED and H.validity is not tag_h:
        raise PreconditionError("carried halfspace-set validity tag is wrong")


def _direct_test(P: VPolytope, H: HPolytope, seed: int, ctx: SolveContext) -> TestResult:
    """Facet-explicit closest-pair computation; base case and fallback.

    Both sides are nonempty by construction here (valid polytopes), and
    hull coefficients are recomputed at certificate time, so the internal
    calls skip both.
    """
    cons = _halfspace_constraints(H)
    primal = closest_pair_vh(P.coords, cons, seed, with_coefficients=False,
                             _assume_feasible=True)
    if isinstance(primal, ClosestPair):
        return TestResult(TestKind.DISJOINT, primal)
    witness = primal.witness
    Hpts = polarize_halfspaces(H)
    Pcons = _halfspace_constraints(polarize_points(P))
    polar = closest_pair_vh(Hpts.coords, Pcons, seed, with_coefficients=False,
                            _assume_feasible=True)
    if isinstance(polar, Intersecting):
        # touching sets: the polar pair degenerates to a common point
        return TestResult(TestKind.INTERSECT, None, witness=witness)
    return TestResult(TestKind.INTERSECT, polar, witness=witness)


def _conflicting_polar_indices(P: VPolytope, w: Vector, exact: bool) -> list:
    """Indices of points whose polar halfspace does not contain w."""
    strictly_greater = P.validity is Validity.EMBRACING
    if not exact:
        import numpy as np
        vals = P.float_array @ np.asarray(w, dtype=float) - 1.0
        tol = get_tolerance()
        hits = vals > tol if strictly_greater else vals < -tol
        return [int(i) for i in np.nonzero(hits)[0]]
    out = []
    for i, c in enumerate(P.coords):
        s = sign(vdot(c, w) - 1)
        if (s > 0) if strictly_greater else (s < 0):
            out.append(i)
    return out


def _conflicting_primal_indices(P: VPolytope, n_vec: Vector, rhs: Scalar,
                                exact: bool) -> list:
    """Indices of points strictly inside {u : <n, u> > rhs}."""
    if not exact:
        import numpy as np
        vals = P.float_array @ np.asarray(n_vec, dtype=float) - float(rhs)
        return [int(i) for i in np.nonzero(vals > get_tolerance())[0]]
    return [i for i, c in enumerate(P.coords) if sign(vdot(n_vec, c) - rhs) > 0]


def test(P: VPolytope, H: HPolytope, params: ResolvedParams,
         ctx: SolveContext) -> TestResult:
    """Closest pair between conv(P) and the intersection of H, or between
    their polars when the primal sets intersect.

    Requires condition (1) (P avoiding, H embracing) or condition (2)
    (P embracing, H avoiding); both are re-established for every recursive
    call, which the FULL check level verifies by classification.
    """
    d = P.dim
    exact = ctx.mode == "exact"
    if params.checks is CheckLevel.FULL:
        _assert_precondition(P, H)
    if len(P) <= params.alpha and len(H) <= params.alpha:
        ctx.stats.base_cases += 1
        return _direct_test(P, H, params.seed, ctx)

    net_params = replace(params.net, seed=params.net.seed + 1009 * ctx.depth)
    N = sample_net(list(P.points), net_params)
    kit = None
    if P.validity is Validity.EMBRACING:
        cache = ctx.kit_cache
        kit = cache.get(id(P))
        if kit is None:
            kit = origin_interior_kit(P.points, require_interior=True)
            cache[id(P)] = kit
    N = augment_for_origin(P.points, N,
                           require_interior=P.validity is Validity.EMBRACING,
                           hull_validity=P.validity, kit=kit)
    lv = ctx.log_level(d, (len(P), len(H)), len(N))

    Hpts = polarize_halfspaces(H)          # fixed for the whole loop
    have = {p.coords for p in N}
    last_case1_dist2 = None
    last_case2_dist2 = None

    for _ in range(2 * d + 1):
        if 4 * len(N) > 3 * len(P):
            # the working set outgrew the input, which only happens when the
            # sampled nets were poor; correctness is unaffected, so solve the
            # current pair directly and flag the run
            ctx.stats.fallback_used = True
            return _direct_test(P, H, params.seed, ctx)
        Nvp = VPolytope(tuple(N), P.validity)
        Hc = polarize_points(Nvp)
        ctx.depth += 1
        try:
            res = test(Hpts, Hc, params, ctx)
        finally:
            ctx.depth -= 1

        if res.kind is TestKind.DISJOINT:
            # Case 1: conv(H*) and /\(N*) are disjoint in the polar space
            w = res.pair.x                     # w lies in /\(N*)
            conflicts = _conflicting_polar_indices(P, w, exact)
            ctx.record_case(lv, 1, d, len(conflicts))
            if params.checks is CheckLevel.FULL and exact:
                if last_case1_dist2 is not None and not lt(last_case1_dist2,
                                                           res.pair.dist2):
                    raise StructureViolation(
                        "polar distance failed to increase across case-1 "
                        "iterations")
                last_case1_dist2 = res.pair.dist2
            if not conflicts:
                # w is in /\(P*): the polar pair is final
                return TestResult(TestKind.INTERSECT, res.pair)
            for i in conflicts:
                p = P.points[i]
                if p.coords not in have:
                    N.append(p)
                    have.add(p.coords)
        else:
            # Case 2: the polar sets intersect, so conv(N) and /\H are
            # disjoint and the child returned their (primal) closest pair
            if res.pair is None:
                raise DegenerateGeometryError(
                    "touching polytopes inside the recursion")
            x, y = res.pair.x, res.pair.y      # x in /\H, y in conv(N)
            n_vec = vsub(x, y)
            rhs = vdot(n_vec, y)
            conflicts = _conflicting_primal_indices(P, n_vec, rhs, exact)
            ctx.record_case(lv, 2, d, len(conflicts))
            if params.checks is CheckLevel.FULL and exact:
                if last_case2_dist2 is not None and not lt(res.pair.dist2,
                                                           last_case2_dist2):
                    raise StructureViolation(
                        "primal distance failed to decrease across case-2 "
                        "iterations")
                last_case2_dist2 = res.pair.dist2
            if not conflicts:
                return TestResult(TestKind.DISJOINT, res.pair)
            for i in conflicts:
                p = P.points[i]
                if p.coords not in have:
                    N.append(p)
                    have.add(p.coords)

    raise LoopExhaustedError(
        f"test loop failed to settle within {2 * d + 1} iterations",
        ctx.stats.levels)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def _separator_certificate(pair: ClosestPair, translation: Vector,
                           P_frame=None) -> Certificate:
    """Hyperplane orthogonal to the pair segment, strictly between the sets.

    ``P_frame`` forces the hull coefficients of y to be recomputed over the
    full point set; pairs coming out of the recursion carry coefficients
    over a subset frame, which would not check out against the instance.
    """
    y_coefficients = pair.y_coefficients
    if P_frame is not None:
        mem = point_in_hull(pair.y, P_frame)
        if not mem.inside:
            raise ModeFailure("closest-pair hull point left the hull")
        y_coefficients = mem.coefficients
    pair = replace(pair, y_coefficients=y_coefficients)
    n_vec = vsub(pair.x, pair.y)
    mid = vscale(vadd(pair.x, pair.y), _half(pair.x))
    offset = vdot(n_vec, mid)
    if is_zero(offset):
        # never happens in the solve frame in exact arithmetic; float-mode
        # robustness shift to the quarter point nearest the hull side
        quarter = vadd(pair.y, vscale(n_vec, _quarter(pair.x)))
        offset = vdot(n_vec, quarter)
    x = vadd(pair.x, translation)
    y = vadd(pair.y, translation)
    offset = offset + vdot(n_vec, translation)
    return Certificate(
        kind=CertificateKind.SEPARATOR, normal=n_vec, offset=offset,
        pair_x=x, pair_y=y, dist2=pair.dist2,
        y_coefficients=pair.y_coefficients)


def _half(sample: Vector) -> Scalar:
    return Fraction(1, 2) if vector_is_exact(sample) else 0.5


def _quarter(sample: Vector) -> Scalar:
    return Fraction(1, 4) if vector_is_exact(sample) else 0.25


def _witness_certificate(w_frame: Vector, P_frame, cons_raw, translation,
                         coefficients=None) -> Certificate:
    if coefficients is None:
        mem = point_in_hull(w_frame, P_frame)
        if not mem.inside:
            raise ModeFailure("witness reconstruction left the hull")
        coefficients = mem.coefficients
    w = vadd(w_frame, translation)
    slacks = tuple(c.b - vdot(c.a, w) for c in cons_raw)
    if any(sign(s) < 0 for s in slacks):
        raise ModeFailure("witness violates a halfspace")
    return Certificate(kind=CertificateKind.WITNESS, point=w,
                       coefficients=tuple(coefficients), slacks=slacks)


def make_certificate(result: TestResult, P_frame, cons_raw, translation,
                     ctx: SolveContext) -> Certificate:
    """Turn a test result into a checkable certificate in the input frame."""
    if result.kind is TestKind.DISJOINT:
        return _separator_certificate(result.pair, translation, P_frame)
    if result.pair is None:
        # touching sets: witness at the common point
        return _witness_certificate(result.witness, P_frame, cons_raw,
                                    translation)
    # polar pair (x~ in /\(P*), y~ in conv(H*)): the polar of any hyperplane
    # strictly separating them is a point of conv(P) /\ /\(H)
    xt, yt = result.pair.x, result.pair.y
    n_vec = vsub(xt, yt)
    offset = vdot(n_vec, vscale(vadd(xt, yt), _half(xt)))
    if is_zero(offset):
        # the origin is interior to the embracing polar hull, so a strictly
        # separating plane through the midpoint cannot pass through it in
        # exact arithmetic; shift toward x~ for float robustness
        offset = vdot(n_vec, vadd(yt, vscale(n_vec, 3 * _quarter(xt))))
        if is_zero(offset):
            raise ModeFailure("polar separator passes through the origin")
    w_frame = tuple(c / offset for c in n_vec)
    return _witness_certificate(w_frame, P_frame, cons_raw, translation)


# ---------------------------------------------------------------------------
# The outer wrapper
# ---------------------------------------------------------------------------


def _translated_instance(points, cons, o):
    exact = vector_is_exact(o)
    if not exact:
        import numpy as np
        A = np.array([c.a for c in cons], dtype=float)
        b = np.array([c.b for c in cons], dtype=float)
        shifts = b - A @ np.asarray(o, dtype=float)
        if float(shifts.min()) <= get_tolerance():
            raise DegenerateGeometryError(
                "translation point is not strictly interior")
        Z = A / shifts[:, None]
        P_frame = [vsub(p, o) for p in points]
        halfspaces = tuple(Halfspace(Hyperplane(tuple(row)), Side.ORIGIN_SIDE)
                           for row in Z.tolist())
        return P_frame, HPolytope(halfspaces, Validity.EMBRACING)
    P_frame = [vsub(p, o) for p in points]
    halfspaces = []
    for c in cons:
        b_shift = c.b - vdot(c.a, o)
        if sign(b_shift) <= 0:
            raise DegenerateGeometryError(
                "translation point is not strictly interior")
        halfspaces.append(Halfspace(Hyperplane(tuple(a / b_shift for a in c.a)),
                                    Side.ORIGIN_SIDE))
    return P_frame, HPolytope(tuple(halfspaces), Validity.EMBRACING)


def _solve_degenerate(points, cons, params, ctx) -> tuple:
    """General-position violations route through the direct QP, which needs
    neither translation nor full-dimensional hulls."""
    ctx.stats.degenerate_used = True
    res = closest_pair_vh_direct(points, cons, params.seed)
    if isinstance(res, Intersecting):
        cert = _witness_certificate(res.witness, points, cons,
                                    zero_vector(len(points[0]),
                                                vector_is_exact(points[0])),
                                    coefficients=res.coefficients)
        return Decision.INTERSECT, cert
    pair = res
    zero = zero_vector(len(points[0]), vector_is_exact(points[0]))
    cert = _separator_certificate(pair, zero)
    return Decision.DISJOINT, cert


def solve(points, halfspaces, params: AcitParams | None = None,
          mode: str = "exact") -> SolveResult:
    """Decide whether conv(points) meets the halfspace intersection.

    ``points`` is a sequence of coordinate tuples, ``halfspaces`` a sequence
    of ``LinearConstraint`` (or convertible ``Halfspace``) objects in the raw
    ``<a, x> <= b`` form.  Returns the decision, a checkable certificate and
    the solve statistics.
    """
    params = params or AcitParams()
    pts = [tuple(p) for p in points]
    cons = as_constraints(halfspaces)
    if not pts:
        raise ValueError("need at least one point")
    d = len(pts[0])
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if any(len(p) != d for p in pts) or any(c.dim != d for c in cons):
        raise GeometryError("dimension mismatch between points and halfspaces")
    if any(all(sign(a) == 0 for a in c.a) for c in cons):
        raise GeometryError("halfspace with zero normal")
    rp = params.resolve(d)
    exact = vector_is_exact(pts[0])
    ctx = SolveContext(translation=zero_vector(d, exact),
                       mode="exact" if exact else "float", params=rp)
    ctx.stats.mode = ctx.mode
    ctx.stats.seed = rp.seed

    interior = deep_interior_point(cons, rp.seed)
    if interior.status is InteriorStatus.EMPTY:
        cert = Certificate(kind=CertificateKind.EMPTY_H, farkas=interior.farkas)
        ctx.stats.decision = Decision.DISJOINT.value
        return SolveResult(Decision.DISJOINT, cert, ctx.stats)
    if interior.status is InteriorStatus.FLAT:
        decision, cert = _solve_degenerate(pts, cons, rp, ctx)
        ctx.stats.decision = decision.value
        return SolveResult(decision, cert, ctx.stats)

    o = interior.point
    ctx.translation = o
    try:
        P_frame, H = _translated_instance(pts, cons, o)
        mem = point_in_hull(zero_vector(d, exact), P_frame)
        if mem.inside:
            cert = _witness_certificate(zero_vector(d, exact), P_frame, cons,
                                        o, coefficients=mem.coefficients)
            ctx.stats.decision = Decision.INTERSECT.value
            return SolveResult(Decision.INTERSECT, cert, ctx.stats)
        P = VPolytope(tuple(Point(p) for p in P_frame), Validity.AVOIDING)
        result = test(P, H, rp, ctx)
        cert = make_certificate(result, P_frame, cons, o, ctx)
    except DegenerateGeometryError:
        decision, cert = _solve_degenerate(pts, cons, rp, ctx)
        ctx.stats.decision = decision.value
        return SolveResult(decision, cert, ctx.stats)
    decision = (Decision.DISJOINT if result.kind is TestKind.DISJOINT
                else Decision.INTERSECT)
    ctx.stats.decision = decision.value
    return SolveResult(decision, cert, ctx.stats)


# ---------------------------------------------------------------------------
# Certificate checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def _check_witness(pts, cons, cert) -> list:
    problems = []
    lam = cert.coefficients
    w = cert.point
    if lam is None or w is None:
        return ["witness payload incomplete"]
    if len(lam) != len(pts):
        return ["coefficients: wrong arity"]
    if any(sign(v) < 0 for v in lam):
        problems.append("coefficients: negative weight")
    total = sum(lam)
    one = Fraction(1) if vector_is_exact(pts[0]) else 1.0
    if not eq(total, one):
        problems.append("coefficients: do not sum to 1")
    d = len(pts[0])
    for j in range(d):
        acc = sum(l * p[j] for l, p in zip(lam, pts))
        if not eq(acc, w[j]):
            problems.append("coefficients: combination misses the point")
            break
    for c in cons:
        if sign(vdot(c.a, w) - c.b) > 0:
            problems.append("halfspace: witness outside")
            break
    return problems


def _check_separator(pts, cons, cert) -> list:
    problems = []
    n_vec, offset = cert.normal, cert.offset
    x, y = cert.pair_x, cert.pair_y
    if n_vec is None or offset is None or x is None or y is None:
        return ["separator payload incomplete"]
    if any(sign(vdot(n_vec, p) - offset) >= 0 for p in pts):
        problems.append("separator: a point is not strictly on the hull side")
    res = solve_lp(n_vec, cons, shuffle_seed=0)
    if res.status is not LPStatus.OPTIMAL or not lt(offset, res.value):
        problems.append("separator: halfspace side not strictly beyond the plane")
    if any(sign(vdot(c.a, x) - c.b) > 0 for c in cons):
        problems.append("pair: x outside the halfspace intersection")
    if cert.y_coefficients is not None:
        lam = cert.y_coefficients
        one = Fraction(1) if vector_is_exact(pts[0]) else 1.0
        if len(lam) != len(pts) or any(sign(v) < 0 for v in lam):
            problems.append("pair: bad hull coefficients for y")
        else:
            d = len(pts[0])
            if not all(eq(sum(l * p[j] for l, p in zip(lam, pts)), y[j])
                       for j in range(d)) or not eq(sum(lam), one):
                problems.append("pair: y is not the claimed hull combination")
    else:
        if not point_in_hull(y, pts).inside:
            problems.append("pair: y outside the hull")
    if not eq(vnorm2(vsub(x, y)), cert.dist2):
        problems.append("pair: distance mismatch")
    return problems


def _check_empty(cons, cert) -> list:
    y = cert.farkas
    if y is None:
        return ["empty-system payload incomplete"]
    if len(y) != len(cons) or any(sign(v) < 0 for v in y):
        return ["farkas: malformed multipliers"]
    d = cons[0].dim
    for j in range(d):
        if not is_zero(sum(yi * c.a[j] for yi, c in zip(y, cons))):
            return ["farkas: combination does not vanish"]
    if not sign(sum(yi * c.b for yi, c in zip(y, cons))) < 0:
        return ["farkas: offsets do not certify emptiness"]
    return []


def check_certificate(points, halfspaces, cert: Certificate) -> CheckReport:
    """Re-verify a certificate against the raw instance.

    Exact for rational data; tolerance-based otherwise.  Returns a report
    rather than raising, so tampered certificates can be inspected.
    """
    pts = [tuple(p) for p in points]
    cons = as_constraints(halfspaces)
    if cert.kind is CertificateKind.WITNESS:
        problems = _check_witness(pts, cons, cert)
    elif cert.kind is CertificateKind.SEPARATOR:
        problems = _check_separator(pts, cons, cert)
    else:
        problems = _check_empty(cons, cert)
    return CheckReport(not problems, tuple(problems))
