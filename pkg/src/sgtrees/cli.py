"""``sg``: command-line access to the exact tables, limits and oracles.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import aggregate as agg
from .config import DEFAULT_TABLE_STAGE, check_stage
from .counts import f_factored, fgh
from .gasket import AddressError, build_graph, parse_address, resolve_address
from .vertexdist import full_table, vertex_distribution

PRECISION = 12


class UsageError(Exception):
    pass


def decimal_str(x, digits: int = PRECISION) -> str:
    """Render an exact value with ``digits`` significant digits."""
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "f") if abs(d) >= Decimal("1e-6") or d == 0 else str(d)


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def frac_json(x, digits: int = PRECISION) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "decimal": decimal_str(x, digits)}


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pretty(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


# -- commands -----------------------------------------------------------------


def cmd_counts(args) -> int:
    n = check_stage(args.n)
    t = fgh(n)
    a, b, c = f_factored(n)
    print(f"f = {t.f}  (= 2^{a} * 3^{b} * 5^{c})")
    print(f"g = {t.g}")
    print(f"h = {t.h}")
    return 0


def cmd_vertex(args) -> int:
    n = check_stage(args.n)
    addr = parse_address(args.address, n)
    dist = vertex_distribution(n, addr)
    p, q = resolve_address(addr, n)
    if args.format == "json":
        doc = {"n": n, "address": str(addr), "p": p, "q": q}
        doc.update({f"F{j}": frac_json(v, args.precision) for j, v in enumerate(dist, 1)})
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["address", "p", "q", "F1", "F2", "F3", "F4"])
        w.writerow([str(addr), p, q, *map(frac_str, dist)])
        sys.stdout.write(buf.getvalue())
    else:
        print(f"{addr} at (p, q) = ({p}, {q}) in SG({n})")
        rows = [["j", "exact", "decimal"]]
        rows += [[str(j), frac_str(v), decimal_str(v, args.precision)] for j, v in enumerate(dist, 1)]
        sys.stdout.write(_pretty(rows))
    return 0


def table_rows(n: int) -> list[tuple]:
    out = []
    for addr, dist in full_table(n).items():
        p, q = resolve_address(addr, n)
        out.append((str(addr), p, q, *dist))
    return out


def render_table(n: int, fmt: str, digits: int = PRECISION) -> str:
    rows = table_rows(n)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["address", "p", "q", "F1", "F2", "F3", "F4"])
        for addr, p, q, *dist in rows:
            w.writerow([addr, p, q, *map(frac_str, dist)])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "n": n,
            "vertices": [
                {"address": a, "p": p, "q": q, **{f"F{j}": frac_json(v, digits) for j, v in enumerate(d, 1)}}
                for a, p, q, *d in rows
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [["address", "p", "q", "F1", "F2", "F3", "F4"]]
    for a, p, q, *d in rows:
        lines.append([a, str(p), str(q), *(decimal_str(v, digits) for v in d)])
    return _pretty(lines)


def read_table_csv(text: str) -> dict[str, tuple[Fraction, ...]]:
    """Inverse of the CSV table rendering."""
    reader = csv.DictReader(io.StringIO(text))
    return {r["address"]: tuple(parse_fraction(r[f"F{j}"]) for j in (1, 2, 3, 4)) for r in reader}


def cmd_table(args) -> int:
    n = check_stage(args.n, DEFAULT_TABLE_STAGE)
    _emit(render_table(n, args.format, args.precision), args.out)
    return 0


def cmd_phi(args) -> int:
    if args.limit == (args.n is not None):
        raise UsageError("give exactly one of --n or --limit")
    if args.compare_square and not args.limit:
        raise UsageError("--compare-square goes with --limit")
    if args.limit:
        label = "limit"
        vals = [agg.phi_limit(j) for j in agg.DEGREES]
        theta = agg.theta()
    else:
        n = check_stage(args.n)
        label = f"n={n}"
        vals = list(agg.phi_vector(n))
        theta = sum((j * v for j, v in zip(agg.DEGREES, vals)), Fraction(0))
    square = agg.square_lattice_reference() if args.compare_square else None
    if args.format == "json":
        doc = {"stage": label, "phi": [frac_json(v, args.precision) for v in vals], "theta": frac_json(theta)}
        if square:
            doc["square_lattice"] = [decimal_str(x, args.precision) for x in square]
        print(json.dumps(doc, indent=2))
        return 0
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "phi", "decimal"] + (["square"] if square else []))
        for j, v in zip(agg.DEGREES, vals):
            w.writerow([j, frac_str(v), decimal_str(v, args.precision)] + ([decimal_str(square[j - 1])] if square else []))
        sys.stdout.write(buf.getvalue())
        return 0
    rows = [["j", f"phi ({label})", "decimal"] + (["square lattice"] if square else [])]
    for j, v in zip(agg.DEGREES, vals):
        row = [str(j), frac_str(v), decimal_str(v, args.precision)]
        if square:
            row.append(decimal_str(square[j - 1], args.precision))
        rows.append(row)
    sys.stdout.write(_pretty(rows))
    print(f"theta = sum j*phi_j = {frac_str(theta)}")
    return 0


def cmd_verify(args) -> int:
    from .verify import suite

    checks = suite(args.level, seed=args.seed, trials=args.trials, threads=args.threads)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_graph(args) -> int:
    n = check_stage(args.n, DEFAULT_TABLE_STAGE)
    _emit(json.dumps(build_graph(n).to_json()) + "\n", args.out)
    return 0


def cmd_oracle(args) -> int:
    n = args.n
    if args.engine == "exhaustive":
        from .oracle.exhaustive import exhaustive_profiles

        doc = exhaustive_profiles(n, args.threads).to_json()
    elif args.engine == "mtt":
        from .oracle.mtt import mtt_report

        doc = mtt_report(n, args.threads)
    else:
        from .oracle.wilson import wilson_sample

        doc = wilson_sample(n, args.trials, args.seed, args.threads).to_json()
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sg", description="Degree statistics of uniform spanning trees on the Sierpinski gasket.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", help="spanning tree and forest counts")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("vertex", help="degree distribution at one vertex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--address", required=True, help='e.g. o, a[2], "~b[3,1,0]"')
    p.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    p.add_argument("--precision", type=int, default=PRECISION)
    p.set_defaults(func=cmd_vertex)

    p = sub.add_parser("table", help="distribution at every vertex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json", "pretty"), default="csv")
    p.add_argument("--precision", type=int, default=PRECISION)
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("phi", help="average over vertices, or its limit")
    p.add_argument("--n", type=int)
    p.add_argument("--limit", action="store_true")
    p.add_argument("--compare-square", action="store_true")
    p.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    p.add_argument("--precision", type=int, default=PRECISION)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--level", choices=("closed-forms", "oracle", "sampler"), default="closed-forms")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="export SG(n) as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("oracle", help="run an oracle engine and export its JSON report")
    p.add_argument("--engine", choices=("exhaustive", "mtt", "wilson"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, AddressError, ValueError, KeyError) as exc:
        print(f"sg {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
