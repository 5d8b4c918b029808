"""Command-line surface: gen | solve | check | bench | plot.

Exit codes for ``solve``: 0 = the polytopes intersect, 1 = disjoint,
2 = error.  ``check`` exits 0 for a valid certificate, 1 for an invalid
one, 2 for a hash mismatch or unreadable input.  The environment variable
``ACIT_MODE`` overrides ``--mode``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import statistics
import sys
import time

from .geometry import Decision
from .instances import (
    GEN_KINDS, certificate_file_to_json, certificate_from_dict, generate,
    instance_hash, load_certificate_file, load_instance, save_instance,
)
from .smalllp import _hull_2d_chain
from .solver import AcitParams, CheckLevel, ModeFailure, check_certificate, solve


def _mode_from(args) -> str:
    return os.environ.get("ACIT_MODE", args.mode)


def _run_solve(inst, mode: str, seed: int):
    exact = mode == "exact"
    pts = inst.point_tuples(exact=exact)
    cons = inst.constraints(exact=exact)
    params = AcitParams(seed=seed)
    try:
        return solve(pts, cons, params, mode=mode), mode
    except ModeFailure:
        if exact:
            raise
        print("float mode failed; retrying in exact mode", file=sys.stderr)
        return solve(inst.point_tuples(True), inst.constraints(True),
                     params, mode="exact"), "exact"


def cmd_gen(args) -> int:
    inst = generate(args.kind, args.d, args.n, args.m, args.seed)
    save_instance(inst, args.out)
    return 0


def cmd_solve(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read instance: {exc}", file=sys.stderr)
        return 2
    mode = _mode_from(args)
    if mode not in ("exact", "float"):
        print(f"error: unknown mode {mode!r}", file=sys.stderr)
        return 2
    try:
        result, mode = _run_solve(inst, mode, args.seed)
    except Exception as exc:  # solver errors land in exit code 2
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(result.decision.value)
    if args.stats:
        print(json.dumps(result.stats.as_dict(), indent=2), file=sys.stderr)
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(certificate_file_to_json(result.certificate, result.stats,
                                              inst))
    return 0 if result.decision is Decision.INTERSECT else 1


def cmd_check(args) -> int:
    try:
        inst = load_instance(args.instance)
        payload = load_certificate_file(args.certificate)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if payload.get("instance_hash") != instance_hash(inst):
        print("error: certificate does not belong to this instance",
              file=sys.stderr)
        return 2
    exact = payload.get("stats", {}).get("mode", "exact") == "exact"
    try:
        cert = certificate_from_dict(payload["certificate"], exact)
    except (KeyError, ValueError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return 2
    report = check_certificate(inst.point_tuples(exact=exact),
                               inst.constraints(exact=exact), cert)
    if report.ok:
        print("certificate: valid")
        return 0
    for msg in report.failures:
        print(f"certificate invalid: {msg}", file=sys.stderr)
    return 1


def _fit_loglog_slope(sizes, medians) -> float:
    xs = [math.log(s) for s in sizes]
    ys = [math.log(max(t, 1e-9)) for t in medians]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    var = sum((x - mx) ** 2 for x in xs)
    return cov / var


def run_bench(d, sizes, trials, seed, writer=None):
    """Timed sweep; returns (rows, slope or None, fallback_rate)."""
    rows = []
    kinds = ("disjoint", "intersecting")
    per_size: dict = {}
    fallbacks = runs = 0
    if sizes and trials:
        # warm up lazy imports (scipy) so the first trial is not polluted
        warm = generate("disjoint", d, 4 * d, 4 * d, seed)
        solve(warm.point_tuples(exact=False), warm.constraints(exact=False),
              AcitParams(seed=seed), mode="float")
    for n in sizes:
        for trial in range(trials):
            kind = kinds[trial % len(kinds)]
            inst = generate(kind, d, n, n, seed + trial)
            pts = inst.point_tuples(exact=False)
            cons = inst.constraints(exact=False)
            t0 = time.perf_counter()
            result = solve(pts, cons, AcitParams(seed=seed + trial),
                           mode="float")
            wall = time.perf_counter() - t0
            runs += 1
            fallbacks += int(result.stats.fallback_used)
            row = {
                "d": d, "n": n, "m": n, "trial": trial, "kind": kind,
                "seed": seed + trial, "wall_s": f"{wall:.6f}",
                "depth": result.stats.depth_reached,
                "base_cases": result.stats.base_cases,
                "fallback": int(result.stats.fallback_used),
                "decision": result.decision.value,
            }
            rows.append(row)
            if writer:
                writer.writerow(row)
            per_size.setdefault(n, []).append(wall)
    slope = None
    if len(per_size) >= 2 and trials > 0:
        medians = [statistics.median(per_size[n]) for n in sorted(per_size)]
        slope = _fit_loglog_slope(sorted(per_size), medians)
    rate = fallbacks / runs if runs else 0.0
    return rows, slope, rate


BENCH_FIELDS = ["d", "n", "m", "trial", "kind", "seed", "wall_s", "depth",
                "base_cases", "fallback", "decision"]


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        _, slope, rate = run_bench(args.d, sizes, args.trials, args.seed,
                                   writer)
    if slope is not None:
        print(f"log-log slope: {slope:.3f}")
    print(f"fallback rate: {rate:.3%}")
    return 0


def _clip_halfplanes(cons, bbox):
    """Sutherland-Hodgman clip of a bounding box by each halfplane."""
    poly = [(bbox[0], bbox[2]), (bbox[1], bbox[2]),
            (bbox[1], bbox[3]), (bbox[0], bbox[3])]
    for c in cons:
        a, b = c.a, float(c.b)
        out = []
        for i, p in enumerate(poly):
            q = poly[(i + 1) % len(poly)]
            fp = a[0] * p[0] + a[1] * p[1] - b
            fq = a[0] * q[0] + a[1] * q[1] - b
            if fp <= 0:
                out.append(p)
            if (fp < 0 < fq) or (fq < 0 < fp):
                t = fp / (fp - fq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        poly = out
        if not poly:
            break
    return poly


def cmd_plot(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if inst.d != 2:
        print("error: plotting is 2-d only", file=sys.stderr)
        return 2
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pts = inst.point_tuples(exact=False)
    cons = inst.constraints(exact=False)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    pad = 2.0
    bbox = (min(xs + [-1]) - pad, max(xs + [1]) + pad,
            min(ys + [-1]) - pad, max(ys + [1]) + pad)

    fig, ax = plt.subplots(figsize=(7, 7))
    region = _clip_halfplanes(cons, bbox)
    if region:
        ax.fill([p[0] for p in region], [p[1] for p in region],
                alpha=0.25, color="tab:blue", label="halfspace intersection")
    hull = _hull_2d_chain(pts)
    hx = [p[0] for p in hull] + [hull[0][0]]
    hy = [p[1] for p in hull] + [hull[0][1]]
    ax.fill(hx, hy, alpha=0.25, color="tab:orange", label="convex hull")
    ax.plot(xs, ys, ".", color="tab:orange", markersize=3)

    if args.certificate:
        try:
            payload = load_certificate_file(args.certificate)
            cert = certificate_from_dict(payload["certificate"], exact=False)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if cert.point is not None:
            ax.plot([cert.point[0]], [cert.point[1]], "*", color="tab:red",
                    markersize=14, label="witness")
        if cert.normal is not None:
            a, b = cert.normal, float(cert.offset)
            seg = _clip_line(a, b, bbox)
            if seg:
                ax.plot([seg[0][0], seg[1][0]], [seg[0][1], seg[1][1]],
                        "-", color="tab:red", label="separator")
            if cert.pair_x is not None:
                ax.plot([cert.pair_x[0], cert.pair_y[0]],
                        [cert.pair_x[1], cert.pair_y[1]], "o--",
                        color="tab:green", label="closest pair")
    ax.set_xlim(bbox[0], bbox[1])
    ax.set_ylim(bbox[2], bbox[3])
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    fig.savefig(args.out, format="svg")
    plt.close(fig)
    return 0


def _clip_line(a, b, bbox):
    """Segment of the line <a, x> = b inside the bbox, or None."""
    pts = []
    x0, x1, y0, y1 = bbox
    if abs(a[1]) > 1e-12:
        for x in (x0, x1):
            y = (b - a[0] * x) / a[1]
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                pts.append((x, y))
    if abs(a[0]) > 1e-12:
        for y in (y0, y1):
            x = (b - a[1] * y) / a[0]
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                pts.append((x, y))
    uniq = sorted(set((round(p[0], 9), round(p[1], 9)) for p in pts))
    return (uniq[0], uniq[-1]) if len(uniq) >= 2 else None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="acit",
                                 description="V-polytope vs H-polytope "
                                             "intersection testing")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--n", type=int, default=16)
    g.add_argument("--m", type=int, default=16)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("instance")
    s.add_argument("--mode", choices=("exact", "float"), default="exact")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stats", action="store_true")
    s.add_argument("--certificate")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="check a certificate against an instance")
    c.add_argument("instance")
    c.add_argument("certificate")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="timed size sweep (float mode)")
    b.add_argument("--d", type=int, default=3)
    b.add_argument("--sizes", default="1000,2000,4000,8000,16000")
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="render an instance (d = 2) to SVG")
    p.add_argument("instance")
    p.add_argument("--certificate")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
