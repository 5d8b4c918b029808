"""Random net sampling, net verification, and conflict sets.

A subset N of a point set P is an eps-net (for halfspace ranges) when every
halfspace that misses N contains fewer than eps*|P| points of P.  The solver
samples nets at eps = 1/d^4; the recursion stays correct even when a sample
fails to be a net (only running time suffers), so the solve path never
verifies.  :func:`verify_net` is the desk-scale combinatorial check used by
the test suite.

Conflict sets come in two flavors: the points of P inside a halfspace, and
the halfspaces of H that miss a point.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import (
    DegenerateGeometryError, Halfspace, Point, Validity, VPolytope,
    halfspace_contains,
)
from .numerics import Scalar, sign, vdot, vector_is_exact, vsub, zero_vector
from .smalllp import (
    LinearConstraint, caratheodory_basis, point_in_hull, support_direction,
)

NET_SIZE_FLOOR = 200          # keeps small-d samples at theorem scale
NET_SIZE_FACTOR = 0.75        # calibration constant in front of the Theta-form
DEFAULT_FAIL_PROB = Fraction(1, 16)


def net_sample_size(d: int) -> int:
    """Sample size for eps = 1/d^4: (c/eps) ln(1/eps + 1/fail_prob), floored.

    The constant is a calibration choice: sampling failures only cost
    running time (the solver falls back to a direct solve when the working
    set grows past half the input), so the factor is tuned for the
    throughput of the recursion rather than for a worst-case guarantee.
    """
    inv_eps = d ** 4
    return max(NET_SIZE_FLOOR,
               math.ceil(NET_SIZE_FACTOR * inv_eps * math.log(inv_eps + 16)))


@dataclass(frozen=True)
class NetParams:
    eps: Fraction
    sample_size: int
    seed: int = 0
    fail_prob: Fraction = DEFAULT_FAIL_PROB

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.sample_size < 1:
            raise ValueError("sample_size must be positive")

    @classmethod
    def for_dimension(cls, d: int, seed: int = 0) -> "NetParams":
        return cls(eps=Fraction(1, d ** 4), sample_size=net_sample_size(d),
                   seed=seed)


@dataclass(frozen=True)
class ConflictSet:
    members: tuple
    generator: object

    def __len__(self):
        return len(self.members)

    def is_empty(self) -> bool:
        return not self.members


def _coords(p):
    return p.coords if isinstance(p, Point) else tuple(p)


def sample_net(points, params: NetParams) -> list:
    """Uniform sample without replacement, deterministic per seed.

    Whole set when it is no larger than the sample size.  No verification
    is performed here; the net property only affects running time.
    """
    pts = list(points)
    if len(pts) <= params.sample_size:
        return pts
    rng = random.Random(f"net:{params.seed}")
    idx = sorted(rng.sample(range(len(pts)), params.sample_size))
    return [pts[i] for i in idx]


def origin_interior_kit(points, require_interior: bool = False) -> list:
    """Points whose hull contains the origin (strictly, when required).

    Starts from a Caratheodory basis of the origin (at most d+1 points) and,
    with ``require_interior``, repeatedly adds a point that kills a
    remaining supporting direction at the origin; every round strictly
    shrinks the support cone, so at most 2d+2 rounds happen.  The kit
    depends only on the point set, so callers drawing many nets from one
    set compute it once.
    """
    pts = [_coords(p) for p in points]
    d = len(pts[0])
    exact = vector_is_exact(pts[0])
    origin = zero_vector(d, exact)
    by_coords = {}
    for p in points:
        by_coords.setdefault(_coords(p), p)
    kit = []
    have = set()
    for c in caratheodory_basis(origin, pts):
        if c not in have:
            kit.append(by_coords[c])
            have.add(c)
    if require_interior:
        for _ in range(2 * d + 2):
            u = support_direction(origin, [_coords(p) for p in kit])
            if u is None:
                return kit
            best, best_val = None, None
            for p in points:
                v = vdot(u, _coords(p))
                if sign(v) < 0 and (best is None or v < best_val):
                    best, best_val = p, v
            if best is None:
                raise DegenerateGeometryError(
                    "origin is not interior to the hull being augmented")
            c = _coords(best)
            if c in have:  # numerical stall; cannot happen in exact mode
                raise DegenerateGeometryError("origin augmentation stalled")
            kit.append(best)
            have.add(c)
        raise DegenerateGeometryError("origin augmentation did not converge")
    return kit


def augment_for_origin(points, net, require_interior: bool = False,
                       hull_validity: Validity = Validity.UNCLASSIFIED,
                       kit=None) -> list:
    """Extend the net so origin containment survives subsetting.

    If the origin lies in conv(points), an :func:`origin_interior_kit` is
    appended so that it also lies in (the interior of, when required)
    conv(result).  A precomputed kit for the same point set may be passed
    in.
    """
    pts = [_coords(p) for p in points]
    net_list = list(net)
    exact = vector_is_exact(pts[0])
    origin = zero_vector(len(pts[0]), exact)
    if hull_validity is Validity.AVOIDING:
        return net_list
    if hull_validity is not Validity.EMBRACING:
        if not point_in_hull(origin, pts).inside:
            return net_list
    if kit is None:
        kit = origin_interior_kit(points, require_interior)
    have = {_coords(p) for p in net_list}
    for p in kit:
        c = _coords(p)
        if c not in have:
            net_list.append(p)
            have.add(c)
    return net_list


def conflict_points(points, h, strict: bool = False) -> ConflictSet:
    """Points of P inside the halfspace (open interior with ``strict``)."""
    if isinstance(h, Halfspace):
        members = tuple(p for p in points
                        if halfspace_contains(h, p if isinstance(p, Point) else Point(_coords(p)),
                                              strict=strict))
    else:
        members = tuple(
            p for p in points
            if (sign(vdot(h.a, _coords(p)) - h.b) < 0 if strict
                else sign(vdot(h.a, _coords(p)) - h.b) <= 0))
    return ConflictSet(members, h)


def conflict_halfspaces(halfspaces, x) -> ConflictSet:
    """Halfspaces of H that do not contain x (violation is naturally strict)."""
    xp = x if isinstance(x, Point) else Point(tuple(x))
    members = tuple(h for h in halfspaces if not halfspace_contains(h, xp))
    return ConflictSet(members, xp)


# ---------------------------------------------------------------------------
# Desk-scale net verification
# ---------------------------------------------------------------------------

VERIFY_MAX_POINTS = 10_000
VERIFY_MAX_DIM = 4


def _subset_normals_batch(Pf: np.ndarray, batch: np.ndarray):
    """Hyperplane (normal, offset) through each d-subset, float, batched."""
    d = Pf.shape[1]
    base = Pf[batch[:, 0]]
    vecs = Pf[batch[:, 1:]] - base[:, None, :]
    normals = np.empty((len(batch), d))
    cols = np.arange(d)
    for j in range(d):
        sub = vecs[:, :, cols != j]
        if sub.shape[1] == 1:
            normals[:, j] = ((-1.0) ** j) * sub[:, 0, 0]
        else:
            normals[:, j] = ((-1.0) ** j) * np.linalg.det(sub)
    offsets = np.einsum("ij,ij->i", normals, base)
    return normals, offsets


def verify_net(points, net, eps) -> bool:
    """Check the net implication over every canonical halfspace.

    Canonical halfspaces are spanned by d-subsets of P, taken in both
    orientations and with open as well as closed boundaries; by the standard
    range-space reduction this family is sufficient.  Sides are evaluated in
    float with a guard band and re-checked exactly where the guard is hit,
    so the verdict is exact for rational inputs.  Desk scale only.
    """
    pts = [_coords(p) for p in points]
    n = len(pts)
    d = len(pts[0])
    if n > VERIFY_MAX_POINTS or d > VERIFY_MAX_DIM:
        raise ValueError("verify_net is a desk-scale checker")
    eps = Fraction(eps) if not isinstance(eps, float) else eps
    net_keys = {_coords(p) for p in net}
    net_idx = np.array([i for i, p in enumerate(pts) if p in net_keys], dtype=int)
    net_mask = np.zeros(n, dtype=bool)
    net_mask[net_idx] = True
    threshold = eps * n  # counts must stay strictly below this

    exact = vector_is_exact(pts[0])
    Pf = np.array([[float(v) for v in p] for p in pts])
    scale = max(1.0, float(np.abs(Pf).max()))

    combos = itertools.combinations(range(n), d)
    chunk = 32768
    while True:
        batch_list = list(itertools.islice(combos, chunk))
        if not batch_list:
            return True
        batch = np.array(batch_list)
        normals, offsets = _subset_normals_batch(Pf, batch)
        ok = np.abs(normals).sum(axis=1) > 1e-12 * scale
        sides = Pf @ normals.T - offsets[None, :]
        guard = 1e-9 * (np.abs(normals).sum(axis=1) * scale + np.abs(offsets) + 1.0)
        for col in np.nonzero(ok)[0]:
            s = sides[:, col]
            g = guard[col]
            subset = batch_list[col]
            signs = np.where(s > g, 1, np.where(s < -g, -1, 0))
            uncertain = [i for i in np.nonzero(np.abs(s) <= g)[0]
                         if i not in subset]
            if exact and uncertain:
                nvec = _exact_normal(pts, subset)
                if nvec is None:
                    continue  # affinely dependent subset spans no hyperplane
                off = vdot(nvec, pts[subset[0]])
                for i in uncertain:
                    signs[i] = sign(vdot(nvec, pts[i]) - off)
            for i in subset:
                signs[i] = 0  # spanning points sit exactly on the boundary
            if not _net_condition_holds(signs, net_mask, threshold, n):
                return False


def _exact_normal(pts, subset):
    from .smalllp import _cofactor_normal
    base = pts[subset[0]]
    vectors = [vsub(pts[i], base) for i in subset[1:]]
    nvec = _cofactor_normal(vectors)
    if all(sign(v) == 0 for v in nvec):
        return None
    return nvec


def _net_condition_holds(signs, net_mask, threshold, n) -> bool:
    """All four (orientation x open/closed) variants of one spanned plane."""
    pos = signs > 0
    neg = signs < 0
    zero = signs == 0
    for inside in (pos, pos | zero, neg, neg | zero):
        if not inside[net_mask].any():
            count = int(inside.sum())
            if not count < threshold:
                return False
    return True
