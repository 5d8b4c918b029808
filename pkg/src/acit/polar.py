"""The polar transformation and validity classification.

The polar of a point ``p != 0`` is the hyperplane ``{x : <p, x> = 1}``; the
polar of the hyperplane ``{x : <z, x> = 1}`` is the point ``z``.  The
operator is an involution.  Point sets and halfspace sets polarize into each
other, and the transformation preserves the embracing / avoiding
classification with respect to the origin, which is what the recursive
intersection test exploits.

Point sets whose hull has the origin on its boundary, and halfspace sets
with mixed orientation, are *invalid*: they are rejected here and the outer
solver makes sure never to produce them.
"""

from __future__ import annotations

from .geometry import (
    DegenerateGeometryError, Halfspace, HPolytope, Hyperplane,
    InvalidPolytopeError, MixedOrientationError, Point, Side, Validity,
    VPolytope, ZeroNormalError,
)
from .numerics import zero_vector, vector_is_exact
from .smalllp import LinearConstraint, feasible_point, point_in_hull


def polar_point(p: Point) -> Hyperplane:
    """Hyperplane {x : <p, x> = 1}; undefined for the origin."""
    if p.is_origin():
        raise ZeroNormalError("the origin has no polar hyperplane")
    return Hyperplane(p.coords)


def polar_hyperplane(h: Hyperplane) -> Point:
    """The point z of the normalized form; inverse of polar_point."""
    return Point(h.z)


def classify_point_set(P: VPolytope) -> Validity:
    """EMBRACING, AVOIDING or INVALID_BOUNDARY for the origin vs conv(P)."""
    origin = zero_vector(P.dim, vector_is_exact(P.points[0].coords))
    mem = point_in_hull(origin, P.coords, strict=False)
    if not mem.inside:
        return Validity.AVOIDING
    if point_in_hull(origin, P.coords, strict=True).inside:
        return Validity.EMBRACING
    return Validity.INVALID_BOUNDARY


def classify_halfspace_set(H: HPolytope) -> Validity:
    """EMBRACING / AVOIDING by orientation tags; mixed orientation is an error.

    An all-far-side set can still have an empty intersection, which is
    reported as INVALID_EMPTY (origin-side sets always contain the origin).
    """
    sides = {h.side for h in H.halfspaces}
    if len(sides) > 1:
        raise MixedOrientationError(
            "halfspace set mixes origin-side and far-side members")
    if sides == {Side.ORIGIN_SIDE}:
        return Validity.EMBRACING
    cons = [LinearConstraint.from_halfspace(h) for h in H.halfspaces]
    if feasible_point(cons) is None:
        return Validity.INVALID_EMPTY
    return Validity.AVOIDING


def _ensure_classified_points(P: VPolytope) -> VPolytope:
    if P.validity is Validity.UNCLASSIFIED:
        P = P.classified(classify_point_set(P))
    return P


def _ensure_classified_halfspaces(H: HPolytope) -> HPolytope:
    if H.validity is Validity.UNCLASSIFIED:
        H = H.classified(classify_halfspace_set(H))
    return H


def polarize_halfspaces(H: HPolytope) -> VPolytope:
    """Point set of the polars of the bounding hyperplanes.

    Valid input maps to a valid point set with the same tag (embracing sets
    polarize to embracing sets, avoiding to avoiding).
    """
    H = _ensure_classified_halfspaces(H)
    if not H.validity.is_valid:
        raise InvalidPolytopeError(f"cannot polarize a {H.validity.value} halfspace set")
    pts = tuple(polar_hyperplane(h.plane) for h in H.halfspaces)
    return VPolytope(pts, H.validity)


def polarize_points(P: VPolytope) -> HPolytope:
    """Halfspace set polar to a valid point set.

    Embracing sets map to origin-side halfspaces, avoiding sets to far-side
    halfspaces; the validity tag is preserved and the polar operator is an
    involution on valid inputs.
    """
    P = _ensure_classified_points(P)
    if not P.validity.is_valid:
        raise InvalidPolytopeError(f"cannot polarize a {P.validity.value} point set")
    if any(p.is_origin() for p in P.points):
        raise DegenerateGeometryError("a point coincides with the origin")
    side = Side.ORIGIN_SIDE if P.validity is Validity.EMBRACING else Side.FAR_SIDE
    hs = tuple(Halfspace(polar_point(p), side) for p in P.points)
    return HPolytope(hs, P.validity)
