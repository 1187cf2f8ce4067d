"""Command line entry point: ``crcodes <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 search budget
exhausted before optimality was proved.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as B
from .codes import (
    SCHEMA_VERSION,
    ConstantDimensionCode,
    ConstantRankCode,
    constant_rank_slice,
    dumps_codebook,
    load_codebook,
    make_gabidulin,
    verify,
)
from .constructions import (
    boost_construction,
    extend_full_rank,
    lift_dimension_to_rank,
    lift_dimension_to_rank_t,
    lift_identity,
    transpose_code,
)
from .fields import CAP_ENV, CapExceeded, field_for
from .fixtures import fixture_paths
from .rank import CountingContext, alpha, ball_volume, count_rank, enumerate_vectors, gaussian, rank_histogram
from .search import DEFAULT_BUDGET, DEFAULT_VERTEX_CAP, solve_ar, solve_as, witness_code
from .selfcheck import run_identity_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, which we reserve
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _range(text: str) -> list[int]:
    """'3' -> [3]; '2:5' -> [2, 3, 4, 5] (inclusive)."""
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":", 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2, sort_keys=True) + "\n"


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


# -- subcommands --


def cmd_count(args: argparse.Namespace) -> int:
    ctx = CountingContext(args.q, args.m, args.n)
    hist = None
    if args.enumerate:
        hist = rank_histogram(enumerate_vectors(field_for(args.q, args.m, cap=args.cap), args.n, cap=args.cap))
    rows = []
    for r in range(min(args.m, args.n) + 1):
        row = {
            "r": r,
            "N_r": count_rank(r, ctx),
            "V_r": ball_volume(r, ctx),
            "gaussian_n_r": gaussian(args.n, r, args.q),
            "alpha_m_r": alpha(args.m, r, args.q),
        }
        if hist is not None:
            row["enumerated"] = hist.get(r, 0)
        rows.append(row)
    params = {"q": args.q, "m": args.m, "n": args.n}
    if args.format == "json":
        _emit(_json({"command": "count", "params": params, "rows": rows}), args.out)
    else:
        header = ["q", "m", "n"] + list(rows[0])
        _emit(_csv(header, [[args.q, args.m, args.n] + list(r.values()) for r in rows]), args.out)
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    q, m, n = args.q, args.m, args.n
    records, status = [], EXIT_OK
    for d in args.d:
        for r in args.r:
            iv = B.ar_interval(q, m, n, d, r)
            rec = {
                "d": d,
                "r": r,
                "lower": iv.lower,
                "upper": iv.upper,
                "exact": iv.exact,
                "lower_source": iv.lower_source,
                "upper_source": iv.upper_source,
                "sources": {f"{b.kind}:{b.source}": b.value for b in iv.bounds},
            }
            if args.search:
                try:
                    res, _ = solve_ar(q, m, n, d, r, budget=args.budget, cap=args.cap or DEFAULT_VERTEX_CAP)
                except CapExceeded:
                    rec["search"] = "over-cap"
                else:
                    rec["search"] = res.cardinality if res.exact else "unknown"
                    if not res.exact:
                        status = EXIT_BUDGET
                    elif res.cardinality not in iv:
                        raise B.BoundInconsistency(f"search value {res.cardinality} outside [{iv.lower}, {iv.upper}]")
            records.append(rec)
    params = {"q": q, "m": m, "n": n}
    if args.format == "json":
        _emit(_json({"command": "bounds", "params": params, "rows": records}), args.out)
        return status
    source_cols = sorted({k for rec in records for k in rec["sources"]})
    header = ["q", "m", "n", "d", "r", "lower", "upper", "exact", "lower_source", "upper_source"]
    header += (["search"] if args.search else []) + source_cols
    rows = []
    for rec in records:
        row = [q, m, n, rec["d"], rec["r"], rec["lower"], rec["upper"], int(rec["exact"]), rec["lower_source"], rec["upper_source"]]
        if args.search:
            row.append(rec["search"])
        row += [rec["sources"].get(k, "") for k in source_cols]
        rows.append(row)
    _emit(_csv(header, rows), args.out)
    return status


def cmd_search(args: argparse.Namespace) -> int:
    if args.kind == "rank":
        if args.m is None:
            raise UsageError("--m is required for --kind rank")
        res, G = solve_ar(args.q, args.m, args.n, args.d, args.r, budget=args.budget, cap=args.cap)
        iv = B.ar_interval(args.q, args.m, args.n, args.d, args.r)
        params = {"q": args.q, "m": args.m, "n": args.n, "d": args.d, "r": args.r}
    else:
        res, G = solve_as(args.q, args.n, args.d, args.r, budget=args.budget, cap=args.cap)
        iv = B.as_bounds(args.q, args.n, (args.d + 1) // 2, args.r)
        params = {"q": args.q, "n": args.n, "d": args.d, "r": args.r}
    if res.exact and res.cardinality not in iv:
        raise B.BoundInconsistency(f"search value {res.cardinality} outside [{iv.lower}, {iv.upper}]")
    report = {
        "command": "search",
        "kind": args.kind,
        "params": params,
        "status": res.status,
        "cardinality": res.cardinality,
        "nodes": res.nodes,
        "vertices": len(G),
        "interval": [iv.lower, iv.upper],
    }
    if args.emit_witness:
        code = witness_code(G, res)
        if not verify(code).ok:
            raise RuntimeError("search witness failed verification")
        Path(args.emit_witness).write_text(dumps_codebook(code))
    _emit(_json(report), args.out)
    return EXIT_OK if res.exact else EXIT_BUDGET


def _need(inputs: list[str], count: int, mode: str) -> list:
    if len(inputs) != count:
        raise UsageError(f"{mode} takes {count} input codebook(s), got {len(inputs)}")
    return [load_codebook(p) for p in inputs]


def _expect(code, cls, mode: str):
    if not isinstance(code, cls):
        kind = "constant-rank" if cls is ConstantRankCode else "constant-dimension"
        raise UsageError(f"{mode} expects a {kind} codebook")
    return code


def cmd_construct(args: argparse.Namespace) -> int:
    mode = args.mode
    if mode == "mrd-slice":
        if None in (args.q, args.m, args.n, args.d, args.r):
            raise UsageError("mrd-slice needs --q --m --n --d --r")
        code = constant_rank_slice(make_gabidulin(field_for(args.q, args.m), args.n, args.d), args.r)
    elif mode in ("lift-s", "lift-t"):
        (src,) = _need(args.inputs, 1, mode)
        _expect(src, ConstantDimensionCode, mode)
        if mode == "lift-s":
            if args.n is None:
                raise UsageError("lift-s needs --n")
            code = lift_dimension_to_rank(src, args.n)
        else:
            if args.m is None:
                raise UsageError("lift-t needs --m")
            code = lift_dimension_to_rank_t(src, args.m)
    elif mode == "boost":
        gamma, delta = _need(args.inputs, 2, mode)
        code = boost_construction(_expect(gamma, ConstantDimensionCode, mode), _expect(delta, ConstantDimensionCode, mode))
    else:
        (src,) = _need(args.inputs, 1, mode)
        src = _expect(src, ConstantRankCode, mode)
        if mode == "lift-identity":
            code = lift_identity(src)
        elif mode == "extend":
            code = extend_full_rank(src)
        else:
            code = transpose_code(src)
    report = verify(code)
    _emit(dumps_codebook(code), args.out)
    if not report.ok:
        sys.stderr.write("\n".join(report.lines()) + "\n")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    paths = [Path(p) for p in args.files]
    fixtures = fixture_paths() if args.all_fixtures else []
    if not paths and not fixtures:
        raise UsageError("give codebook files or --all-fixtures")
    lines, ok = [], True
    # fixtures are labelled by file name so the report does not depend on the install path
    for path, label in [(p, str(p)) for p in paths] + [(p, p.name) for p in fixtures]:
        code = load_codebook(path)
        report = verify(code)
        ok &= report.ok
        lines.append(f"{'PASS' if report.ok else 'FAIL'} {label}: {len(code)} words")
        lines += [f"  {line}" for line in report.lines()]
    if args.all_fixtures:
        for name, passed, detail in run_identity_suite():
            ok &= passed
            lines.append(f"{'PASS' if passed else 'FAIL'} identity {name}: {detail}")
    lines.append("all checks passed" if ok else "verification FAILED")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_asymptotics(args: argparse.Namespace) -> int:
    nu = Fraction(args.nu)
    if nu <= 0:
        raise UsageError("--nu must be positive")
    top = min(nu, 1)
    rows = []
    for i in range(args.rho_steps + 1):
        rho = Fraction(i, args.rho_steps) * top
        for j in range(args.delta_steps + 1):
            delta = Fraction(j, args.delta_steps) * top
            iv = B.asymptotic_ar(nu, delta, rho)
            a_s = B.asymptotic_as(delta / 2, rho) if nu == 1 else ""
            rows.append([_frac(nu), _frac(rho), _frac(delta), _frac(iv.lower), _frac(iv.upper), int(iv.exact), a_s if a_s == "" else _frac(a_s)])
    header = ["nu", "rho", "delta_r", "a_r_lower", "a_r_upper", "exact", "a_s_half_delta"]
    _emit(_csv(header, rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crcodes", description="Constant-rank and rank-metric code toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser, fmt: bool = False) -> None:
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--cap", type=int, default=None, help=f"enumeration cap (default from ${CAP_ENV})")
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("count", help="N_r, V_r, Gaussian binomials and alpha for one (q, m, n)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--enumerate", action="store_true", help="add a brute-force histogram column")
    common(s, fmt=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("bounds", help="best-known intervals for A_R(q^m, n, d, r)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", "--d-range", dest="d", type=_range, required=True, metavar="D|LO:HI")
    s.add_argument("--r", "--r-range", dest="r", type=_range, required=True, metavar="R|LO:HI")
    s.add_argument("--search", action="store_true", help="also run the exact search")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(s, fmt=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="exact A_R or A_S by branch and bound")
    s.add_argument("--kind", choices=("rank", "subspace"), required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True, help="rank distance, or full subspace distance")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--emit-witness", metavar="FILE", help="write the optimal code as a codebook")
    common(s)
    s.set_defaults(func=cmd_search, cap=DEFAULT_VERTEX_CAP)

    s = sub.add_parser("construct", help="build a code from codebooks or parameters")
    s.add_argument("mode", choices=("lift-s", "lift-t", "boost", "lift-identity", "extend", "transpose", "mrd-slice"))
    s.add_argument("inputs", nargs="*", help="input codebook files")
    for flag in ("--q", "--m", "--n", "--d", "--r"):
        s.add_argument(flag, type=int)
    common(s)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", help="verify codebooks; --all-fixtures also runs the identity suite")
    s.add_argument("files", nargs="*")
    s.add_argument("--all-fixtures", action="store_true")
    common(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("asymptotics", help="asymptotic rate surface as CSV")
    s.add_argument("--nu", default="1", help="n/m as an integer, decimal or fraction")
    s.add_argument("--rho-steps", type=int, default=32)
    s.add_argument("--delta-steps", type=int, default=32)
    common(s)
    s.set_defaults(func=cmd_asymptotics)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "cap", None) is not None and args.cap < 1:
            parser.error("--cap must be positive")
        if getattr(args, "budget", 1) < 1:
            parser.error("--budget must be positive")
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"crcodes: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
