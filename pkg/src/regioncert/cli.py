"""Command-line front end.

Subcommands::

    certify          certify every candidate point of a points file
    radius-sweep     repeat certify for a list of box radii
    precision-sweep  repeat certify for a list of mantissa sizes

Exit status is 0 when every row is certified, 1 when some row is not, and
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .alpha import PairVerdict, certify_boxes, cluster_solutions
from .errors import NonSquareSystem, ParseError
from .linalg import IntervalVector
from .polysys import parse_points, parse_system
from .precision import MIN_BITS, get_context, parse_precision

TSV_COLUMNS = ("idx", "alpha", "beta", "gamma", "certified")
DEFAULT_SWEEP_RADIUS = "1e-20"


class InputError(Exception):
    """Bad command-line values or unreadable input files."""


def format_upper(x):
    """Scientific notation with 6 significant digits, rounded up.

    Printing never understates an upper bound; ``inf`` is spelled out.
    """
    if x is None or x == math.inf:
        return "inf"
    fr = Fraction(x)
    if fr == 0:
        return "0.00000e+00"
    neg = fr < 0
    a = -fr if neg else fr
    e = math.floor(math.log10(float(a))) if float(a) > 0 else -400
    # fix the float estimate of the decade exactly
    while a >= Fraction(10) ** (e + 1):
        e += 1
    while a < Fraction(10) ** e:
        e -= 1
    scaled = a / Fraction(10) ** (e - 5)
    # toward +inf: ceiling for positives, floor of magnitude for negatives
    digits = math.floor(scaled) if neg else math.ceil(scaled)
    if digits == 10**6:
        digits, e = 10**5, e + 1
    s = str(digits)
    return f"{'-' if neg else ''}{s[0]}.{s[1:]}e{e:+03d}"


def _float_up(ctx, x):
    return math.inf if x == ctx.inf else ctx.to_float_up(x)


def _row(idx, res, ctx):
    return {
        "idx": idx,
        "alpha": _float_up(ctx, res.alpha_up),
        "beta": _float_up(ctx, res.beta_up),
        "gamma": _float_up(ctx, res.gamma_up),
        "certified": res.certified,
        "singular": res.singular,
        "mu": _float_up(ctx, res.mu_up),
        "uniqueness_radius": None if res.uniqueness_radius is None else ctx.to_float_down(res.uniqueness_radius),
    }


def _tsv_cells(row):
    return [
        str(row["idx"]),
        format_upper(row["alpha"]),
        format_upper(row["beta"]),
        format_upper(row["gamma"]),
        "true" if row["certified"] else "false",
    ]


def _json_safe(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_json_safe(v) for v in obj]
    return obj


# -- loading ---------------------------------------------------------------


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_inputs(system_path, points_path, ctx):
    system = parse_system(_read(system_path), ctx, source=str(system_path))
    points = parse_points(_read(points_path), system.nvars, ctx, source=str(points_path))
    return system, points


def _check_radius(text):
    try:
        r = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"invalid radius {text!r}") from None
    if r < 0:
        raise InputError(f"radius must be nonnegative, got {text!r}")
    return text


def _split_list(text, what):
    items = [t.strip() for t in (text or "").split(",") if t.strip()]
    if not items:
        raise InputError(f"empty {what} list")
    return items


def _context(spec):
    try:
        return parse_precision(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- core runs -------------------------------------------------------------


def run_certify(system, points, radius, ctx, distinct=False, jobs=1):
    """Certify ``points`` at ``radius``; returns ``(rows, clustering)``."""
    boxes = [IntervalVector.around(p, radius, ctx) for p in points]
    results = certify_boxes(system, boxes, jobs=jobs)
    rows = [_row(i, r, ctx) for i, r in enumerate(results)]
    clustering = cluster_solutions(system, boxes, results) if distinct else None
    return rows, clustering


def _clustering_json(clustering):
    k = len(clustering.verdicts)
    pairs = [
        {"i": i, "j": j, "verdict": clustering.verdicts[i][j].value}
        for i in range(k)
        for j in range(i + 1, k)
    ]
    return pairs, clustering.clusters


def _emit(out, fmt, header, rows, cells, meta, clustering=None):
    if fmt == "json":
        doc = dict(meta)
        doc["rows"] = rows
        if clustering is not None:
            pairs, clusters = _clustering_json(clustering)
            doc["pairs"] = pairs
            doc["clusters"] = clusters
        out.write(json.dumps(_json_safe(doc), indent=2) + "\n")
        return
    out.write("\t".join(header) + "\n")
    for row in rows:
        out.write("\t".join(cells(row)) + "\n")
    if clustering is not None:
        pairs, clusters = _clustering_json(clustering)
        out.write("\ni\tj\tverdict\n")
        for p in pairs:
            out.write(f"{p['i']}\t{p['j']}\t{p['verdict']}\n")
        out.write("\ncluster\tmembers\n")
        for c, members in enumerate(clusters):
            out.write(f"{c}\t{','.join(str(m) for m in members)}\n")


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline="\n"), True
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _finish(args, header, rows, cells, meta, clustering, started):
    out, close = _open_output(args.output)
    try:
        _emit(out, args.format, header, rows, cells, meta, clustering)
    finally:
        if close:
            out.close()
    ok = sum(1 for r in rows if r["certified"])
    print(f"certified {ok}/{len(rows)} rows in {time.perf_counter() - started:.3f} s", file=sys.stderr)
    return 0 if ok == len(rows) else 1


def cmd_certify(args):
    started = time.perf_counter()
    ctx = _context(args.precision)
    radius = _check_radius(args.radius)
    system, points = load_inputs(args.system, args.points, ctx)
    rows, clustering = run_certify(system, points, radius, ctx, args.distinct, args.jobs)
    meta = {"command": "certify", "precision": ctx.spec, "radius": radius}
    return _finish(args, TSV_COLUMNS, rows, _tsv_cells, meta, clustering, started)


def cmd_radius_sweep(args):
    started = time.perf_counter()
    radii = [_check_radius(r) for r in _split_list(args.radii, "radius")]
    ctx = _context(args.precision)
    system, points = load_inputs(args.system, args.points, ctx)
    rows = []
    for r in radii:
        part, _ = run_certify(system, points, r, ctx, jobs=args.jobs)
        rows.extend(dict(row, radius=r) for row in part)
    meta = {"command": "radius-sweep", "precision": ctx.spec, "radii": radii}
    header = ("radius",) + TSV_COLUMNS
    return _finish(args, header, rows, lambda row: [row["radius"]] + _tsv_cells(row), meta, None, started)


def cmd_precision_sweep(args):
    started = time.perf_counter()
    specs = _split_list(args.bits, "bits")
    contexts = []
    for b in specs:
        if not b.isdigit():
            raise InputError(f"bits must be positive integers, got {b!r}")
        if int(b) < MIN_BITS:
            raise InputError(f"precision below {MIN_BITS} bits is not supported: {b}")
        contexts.append(get_context(int(b)))
    radius = _check_radius(args.radius)
    rows = []
    for ctx in contexts:
        system, points = load_inputs(args.system, args.points, ctx)
        part, _ = run_certify(system, points, radius, ctx, jobs=args.jobs)
        rows.extend(dict(row, precision=ctx.mantissa_bits) for row in part)
    meta = {"command": "precision-sweep", "radius": radius, "bits": [c.mantissa_bits for c in contexts]}
    header = ("precision",) + TSV_COLUMNS
    return _finish(args, header, rows, lambda row: [str(row["precision"])] + _tsv_cells(row), meta, None, started)


# -- argument parsing --------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="regioncert",
        description="Certify numerical solutions of square polynomial systems over interval boxes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--system", required=True, help="polynomial system file")
        p.add_argument("--points", required=True, help="candidate points file")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--output", default=None, help="output file (default: standard output)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for certification")

    p = sub.add_parser("certify", help="certify each candidate point")
    common(p)
    p.add_argument("--radius", default="0", help="box radius around each point (decimal)")
    p.add_argument("--precision", default="double", help="'double' or 'bits:N'")
    p.add_argument("--distinct", action="store_true", help="also classify pairs and cluster solutions")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("radius-sweep", help="certify for several box radii")
    common(p)
    p.add_argument("--radii", required=True, help="comma-separated radii")
    p.add_argument("--precision", default="double", help="'double' or 'bits:N'")
    p.set_defaults(func=cmd_radius_sweep)

    p = sub.add_parser("precision-sweep", help="certify for several mantissa sizes")
    common(p)
    p.add_argument("--bits", required=True, help="comma-separated mantissa sizes in bits")
    p.add_argument("--radius", default=DEFAULT_SWEEP_RADIUS, help="box radius (default 1e-20)")
    p.set_defaults(func=cmd_precision_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (InputError, ParseError, NonSquareSystem, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
