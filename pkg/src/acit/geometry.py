"""Elementary geometric types and predicates.

Hyperplanes are stored in the normalized form ``{x : <z, x> = 1}``, which
excludes planes through the origin; that restriction is what makes the polar
transformation in :mod:`acit.polar` an involution.  Halfspaces carry a side
tag telling whether they contain the origin.

All types are immutable values and all operations are pure functions, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cached_property

from .numerics import (
    Scalar, Vector, is_exact, sign, vdot, vnorm2, vnorm, vector_is_exact,
)


class GeometryError(ValueError):
    pass


class DimensionMismatch(GeometryError):
    pass


class ZeroNormalError(GeometryError):
    pass


class MixedOrientationError(GeometryError):
    """Halfspace set mixes origin-side and far-side members."""


class DegenerateGeometryError(GeometryError):
    """Input violates a general-position assumption (flat hull, boundary hit)."""


class InvalidPolytopeError(GeometryError):
    """A polytope required to be valid (embracing or avoiding) is not."""


class Decision(enum.Enum):
    INTERSECT = "intersect"
    DISJOINT = "disjoint"


class Side(enum.Enum):
    ORIGIN_SIDE = "origin"   # {x : <z,x> <= 1}, contains the origin
    FAR_SIDE = "far"         # {x : <z,x> >= 1}, excludes the origin


class Validity(enum.Enum):
    EMBRACING = "embracing"
    AVOIDING = "avoiding"
    INVALID_BOUNDARY = "invalid_boundary"
    INVALID_EMPTY = "invalid_empty"
    UNCLASSIFIED = "unclassified"

    @property
    def is_valid(self) -> bool:
        return self in (Validity.EMBRACING, Validity.AVOIDING)


@dataclass(frozen=True)
class Point:
    coords: Vector

    def __post_init__(self):
        if len(self.coords) < 2:
            raise DimensionMismatch("points must have dimension >= 2")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_origin(self) -> bool:
        return all(sign(c) == 0 for c in self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane {x : <z, x> = 1}.  z = 0 is excluded."""

    z: Vector

    def __post_init__(self):
        if all(sign(c) == 0 for c in self.z):
            raise ZeroNormalError("hyperplane normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.z)


@dataclass(frozen=True)
class Halfspace:
    plane: Hyperplane
    side: Side

    @property
    def dim(self) -> int:
        return self.plane.dim

    def contains_origin(self) -> bool:
        return self.side is Side.ORIGIN_SIDE


@dataclass(frozen=True)
class VPolytope:
    """Finite point set; the polytope is its convex hull."""

    points: tuple
    validity: Validity = Validity.UNCLASSIFIED

    def __post_init__(self):
        if not self.points:
            raise GeometryError("VPolytope needs at least one point")
        d = self.points[0].dim
        if any(p.dim != d for p in self.points):
            raise DimensionMismatch("all points must share one dimension")

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def __len__(self) -> int:
        return len(self.points)

    def classified(self, tag: Validity) -> "VPolytope":
        return replace(self, validity=tag)

    @cached_property
    def coords(self) -> tuple:
        """Raw coordinate tuples, cached for hot scans."""
        return tuple(p.coords for p in self.points)

    @cached_property
    def float_array(self):
        """Float coordinate matrix for vectorized scans (lazy import keeps
        numpy out of the pure-geometry dependency set until needed)."""
        import numpy as np
        return np.array([[float(v) for v in c] for c in self.coords])


@dataclass(frozen=True)
class HPolytope:
    """Finite halfspace set; the polytope is their intersection."""

    halfspaces: tuple
    validity: Validity = Validity.UNCLASSIFIED

    def __post_init__(self):
        if not self.halfspaces:
            raise GeometryError("HPolytope needs at least one halfspace")
        d = self.halfspaces[0].dim
        if any(h.dim != d for h in self.halfspaces):
            raise DimensionMismatch("all halfspaces must share one dimension")

    @property
    def dim(self) -> int:
        return self.halfspaces[0].dim

    def __len__(self) -> int:
        return len(self.halfspaces)

    def classified(self, tag: Validity) -> "HPolytope":
        return replace(self, validity=tag)


def halfspace_contains(h: Halfspace, p: Point, strict: bool = False) -> bool:
    """Membership test.  Boundary points belong to both orientations.

    With ``strict=True`` boundary points are excluded.
    """
    if h.dim != p.dim:
        raise DimensionMismatch(f"halfspace dim {h.dim} vs point dim {p.dim}")
    s = sign(vdot(h.plane.z, p.coords) - 1)
    if h.side is Side.ORIGIN_SIDE:
        return s < 0 if strict else s <= 0
    return s > 0 if strict else s >= 0


def point_plane_offset(h: Hyperplane, p: Point) -> Scalar:
    """Signed value <z,p> - 1; zero exactly on the plane."""
    if h.dim != p.dim:
        raise DimensionMismatch(f"hyperplane dim {h.dim} vs point dim {p.dim}")
    return vdot(h.z, p.coords) - 1


def point_hyperplane_distance2(h: Hyperplane, p: Point) -> Scalar:
    """Squared Euclidean distance (<z,p> - 1)^2 / |z|^2, exact in rational mode."""
    off = point_plane_offset(h, p)
    return (off * off) / vnorm2(h.z)


def point_hyperplane_distance(h: Hyperplane, p: Point) -> float:
    """Euclidean distance |<z,p> - 1| / ||z||.

    Returned as a float in both modes (a rational square root generally does
    not exist); exact work should use :func:`point_hyperplane_distance2`.
    """
    return abs(float(point_plane_offset(h, p))) / vnorm(h.z)


def vpolytope(points_coords, validity: Validity = Validity.UNCLASSIFIED) -> VPolytope:
    return VPolytope(tuple(Point(tuple(c)) for c in points_coords), validity)


def hpolytope(normals, validity: Validity = Validity.UNCLASSIFIED,
              side: Side = Side.ORIGIN_SIDE) -> HPolytope:
    return HPolytope(tuple(Halfspace(Hyperplane(tuple(z)), side) for z in normals),
                     validity)


def points_are_exact(P: VPolytope) -> bool:
    return all(vector_is_exact(p.coords) for p in P.points)
