"""Instance and certificate files: JSON schemas, hashing, generators.

Instances carry rational coordinates as strings ("3/4" or "0.75"), so exact
mode survives serialization losslessly.  The instance hash binds a
certificate file to the geometry it was produced from (metadata excluded).

Generators are deterministic per seed and record the constructed ground
truth in the metadata:

* ``disjoint``   -- points in a ball, halfspaces around a second ball, and
  one explicit separating halfspace guaranteeing a gap;
* ``intersecting`` -- a planted convex combination of the points forced
  into every halfspace;
* ``touching-adversarial`` -- the disjoint construction with the gap shrunk
  to 1e-6 to stress float mode.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .numerics import format_scalar, parse_scalar
from .smalllp import LinearConstraint

GEN_KINDS = ("disjoint", "intersecting", "touching-adversarial")
TOUCH_GAP = Fraction(1, 10 ** 6)
_DEN = 64  # coordinate grid denominator; keeps exact arithmetic snappy


@dataclass
class InstanceFile:
    d: int
    points: list                      # list of tuples of Fraction
    halfspaces: list                  # list of (normal tuple, offset, sense)
    metadata: dict = field(default_factory=dict)

    def constraints(self, exact: bool = True) -> list:
        """Canonical <a, x> <= b constraints in the requested mode."""
        out = []
        for normal, offset, sense in self.halfspaces:
            a, b = tuple(normal), offset
            if sense == "geq":
                a, b = tuple(-v for v in a), -b
            if not exact:
                a, b = tuple(float(v) for v in a), float(b)
            out.append(LinearConstraint(a, b))
        return out

    def point_tuples(self, exact: bool = True) -> list:
        if exact:
            return [tuple(p) for p in self.points]
        return [tuple(float(v) for v in p) for p in self.points]


def _instance_payload(inst: InstanceFile) -> dict:
    return {
        "d": inst.d,
        "points": [[format_scalar(v) for v in p] for p in inst.points],
        "halfspaces": [
            {"normal": [format_scalar(v) for v in normal],
             "offset": format_scalar(offset), "sense": sense}
            for normal, offset, sense in inst.halfspaces
        ],
    }


def instance_to_json(inst: InstanceFile) -> str:
    payload = _instance_payload(inst)
    payload["metadata"] = inst.metadata
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def instance_from_json(text: str) -> InstanceFile:
    raw = json.loads(text)
    d = int(raw["d"])
    points = [tuple(parse_scalar(v, exact=True) for v in p) for p in raw["points"]]
    halfspaces = []
    for h in raw["halfspaces"]:
        sense = h.get("sense", "leq")
        if sense not in ("leq", "geq"):
            raise ValueError(f"bad sense {sense!r}")
        halfspaces.append((tuple(parse_scalar(v, exact=True) for v in h["normal"]),
                           parse_scalar(h["offset"], exact=True), sense))
    if any(len(p) != d for p in points) or any(len(n) != d for n, _, _ in halfspaces):
        raise ValueError("array shapes inconsistent with d")
    return InstanceFile(d, points, halfspaces, raw.get("metadata", {}))


def instance_hash(inst: InstanceFile) -> str:
    blob = json.dumps(_instance_payload(inst), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def load_instance(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return instance_from_json(fh.read())


def save_instance(inst: InstanceFile, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(instance_to_json(inst))


# -- certificate files -------------------------------------------------------


def _scalar_list(values):
    return None if values is None else [format_scalar(v) for v in values]


def certificate_to_dict(cert) -> dict:
    return {
        "kind": cert.kind.value,
        "point": _scalar_list(cert.point),
        "coefficients": _scalar_list(cert.coefficients),
        "slacks": _scalar_list(cert.slacks),
        "normal": _scalar_list(cert.normal),
        "offset": None if cert.offset is None else format_scalar(cert.offset),
        "pair_x": _scalar_list(cert.pair_x),
        "pair_y": _scalar_list(cert.pair_y),
        "dist2": None if cert.dist2 is None else format_scalar(cert.dist2),
        "y_coefficients": _scalar_list(cert.y_coefficients),
        "farkas": _scalar_list(cert.farkas),
        "distance": cert.distance,
    }


def certificate_from_dict(raw: dict, exact: bool):
    from .solver import Certificate, CertificateKind

    def vec(key):
        v = raw.get(key)
        return None if v is None else tuple(parse_scalar(s, exact) for s in v)

    def scal(key):
        v = raw.get(key)
        return None if v is None else parse_scalar(v, exact)

    return Certificate(
        kind=CertificateKind(raw["kind"]), point=vec("point"),
        coefficients=vec("coefficients"), slacks=vec("slacks"),
        normal=vec("normal"), offset=scal("offset"), pair_x=vec("pair_x"),
        pair_y=vec("pair_y"), dist2=scal("dist2"),
        y_coefficients=vec("y_coefficients"), farkas=vec("farkas"))


def certificate_file_to_json(cert, stats, inst: InstanceFile) -> str:
    payload = {
        "instance_hash": instance_hash(inst),
        "certificate": certificate_to_dict(cert),
        "stats": stats.as_dict(),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def load_certificate_file(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.loads(fh.read())


# -- generators ---------------------------------------------------------------


def _rat(rng, lo, hi, den=_DEN) -> Fraction:
    return Fraction(rng.randint(int(lo * den), int(hi * den)), den)


def _ball_point(rng, d, radius, center=None) -> tuple:
    r2 = Fraction(radius) ** 2
    while True:
        p = tuple(_rat(rng, -radius, radius) for _ in range(d))
        if sum(v * v for v in p) <= r2:
            break
    if center is None:
        return p
    return tuple(v + c for v, c in zip(p, center))


def _ball_halfspace(rng, d, center, radius):
    """A halfspace containing ball(center, radius): <u, x-c> <= r|u|_1 slackened."""
    while True:
        u = tuple(Fraction(rng.randint(-_DEN, _DEN), _DEN) for _ in range(d))
        if any(u):
            break
    l1 = sum(abs(v) for v in u)
    b = sum(uv * cv for uv, cv in zip(u, center)) + radius * l1 \
        + Fraction(rng.randint(0, _DEN), _DEN)
    return u, b


def _with_sense(rng, a, b):
    if rng.random() < 0.25:
        return tuple(-v for v in a), -b, "geq"
    return a, b, "leq"


def gen_disjoint(d, n, m, seed, gap=Fraction(1, 4), kind="disjoint") -> InstanceFile:
    rng = random.Random(f"gen:{kind}:{d}:{n}:{m}:{seed}")
    gap = Fraction(gap)
    r_p = Fraction(2)
    sep = Fraction(3, 2)  # /\H lives in {x1 <= sep}
    center = (sep + gap + r_p,) + tuple(Fraction(0) for _ in range(d - 1))
    points = [_ball_point(rng, d, r_p, center) for _ in range(n)]
    e1 = (Fraction(1),) + tuple(Fraction(0) for _ in range(d - 1))
    halfspaces = [_with_sense(rng, e1, sep)]
    origin = tuple(Fraction(0) for _ in range(d))
    for _ in range(m - 1):
        a, b = _ball_halfspace(rng, d, origin, Fraction(1))
        halfspaces.append(_with_sense(rng, a, b))
    meta = {"seed": seed, "kind": kind, "expected": "disjoint",
            "gap_lower_bound": format_scalar(gap)}
    return InstanceFile(d, points, halfspaces, meta)


def gen_intersecting(d, n, m, seed) -> InstanceFile:
    rng = random.Random(f"gen:intersecting:{d}:{n}:{m}:{seed}")
    points = [_ball_point(rng, d, Fraction(4)) for _ in range(n)]
    k = min(d + 1, n)
    weights = [Fraction(rng.randint(1, _DEN), _DEN) for _ in range(k)]
    total = sum(weights)
    weights = [w / total for w in weights]
    support = rng.sample(range(n), k)
    w = tuple(sum(weights[i] * points[support[i]][j] for i in range(k))
              for j in range(d))
    halfspaces = []
    origin = tuple(Fraction(0) for _ in range(d))
    for _ in range(m):
        while True:
            a = tuple(Fraction(rng.randint(-_DEN, _DEN), _DEN) for _ in range(d))
            if any(a):
                break
        slack = Fraction(rng.randint(1, 4 * _DEN), _DEN)
        b = sum(av * wv for av, wv in zip(a, w)) + slack
        halfspaces.append(_with_sense(rng, a, b))
    meta = {"seed": seed, "kind": "intersecting", "expected": "intersect",
            "planted": [format_scalar(v) for v in w]}
    return InstanceFile(d, points, halfspaces, meta)


def gen_touching(d, n, m, seed) -> InstanceFile:
    return gen_disjoint(d, n, m, seed, gap=TOUCH_GAP, kind="touching-adversarial")


def generate(kind, d, n, m, seed) -> InstanceFile:
    if d < 2 or n < d + 1 or m < d + 1:
        raise ValueError("need d >= 2, n >= d+1, m >= d+1")
    if kind == "disjoint":
        return gen_disjoint(d, n, m, seed)
    if kind == "intersecting":
        return gen_intersecting(d, n, m, seed)
    if kind == "touching-adversarial":
        return gen_touching(d, n, m, seed)
    raise ValueError(f"unknown kind {kind!r}; choose from {GEN_KINDS}")
