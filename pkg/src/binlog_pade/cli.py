"""Command-line entry point: ``binlog-pade <command> [flags]``.

Exit codes: 0 success, 1 a certificate failed, 2 bad flags or configuration.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable

import mpmath

from . import grid, measures, normality, numeric
from .exact import Place, as_rational, rational_str
from .pade_binlog import ConfigError, SystemConfig, build_row, build_system, row_to_json, scaling_Dn

SCHEMA_VERSION = 1


class UsageError(Exception):
    """Bad flag values detected after argparse (exit code 2)."""


def _run_map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _summary(records: Iterable[dict]) -> dict:
    records = list(records)
    failed = [r["key"] for r in records if not r.get("pass", True)]
    return {"total": len(records), "passed": len(records) - len(failed), "failed": len(failed), "failures": failed}


def _config_from(args) -> SystemConfig:
    return SystemConfig.of(grid.parse_rational_list(args.omegas), grid.parse_int_list(args.rs), args.n, args.k or 1)


# -- commands; each returns (config echo, results, summary)


def cmd_construct(args):
    cfg = _config_from(args)
    if args.k:
        row = build_row(cfg, args.trunc_margin)
        echo = cfg.to_json()
        results = {"config": echo, "scaling": str(scaling_Dn(cfg)), "rows": [row_to_json(row)]}
    else:
        results = build_system(cfg, args.trunc_margin).to_json()
        echo = results["config"]
    orders = [r["certified_order"] for r in results["rows"]]
    return echo, results, {"certified_orders": orders, "failed": 0}


def _grid_from(args, default_n: int) -> list[SystemConfig]:
    if args.omegas is not None:
        if args.rs is None or args.n is None:
            raise UsageError("--omegas needs --rs and --n")
        return [SystemConfig.of(grid.parse_rational_list(args.omegas), grid.parse_int_list(args.rs), args.n)]
    spec = grid.GridSpec(
        tuple(args.omega_set.split(",")),
        args.max_m,
        args.max_sum_r,
        default_n if args.max_n is None else args.max_n,
    )
    return list(spec.configs())


def cmd_verify(args):
    suite = args.suite
    margin = args.trunc_margin
    if suite in ("order", "bijection"):
        cfgs = _grid_from(args, 5)
        records = _run_map(partial(grid.check_order, margin=margin), cfgs, args.jobs)
        if suite == "bijection":
            for r in records:
                r["pass"] = r["bijection"]
    elif suite == "integrality":
        cfgs = _grid_from(args, 5)
        records = _run_map(partial(grid.check_integrality_point, scaling=args.scaling, margin=margin), cfgs, args.jobs)
    elif suite == "determinant":
        cfgs = _grid_from(args, 3)
        records = _run_map(partial(grid.check_determinant_point, margin=margin), cfgs, args.jobs)
    elif suite == "perfectness":
        points = list(grid.perfectness_grid(args.max_omega, args.max_weight_sum))
        records = _run_map(_perfectness_star, points, args.jobs)
    elif suite == "hankel":
        points = [(r, n) for r in range(1, args.polylog_r + 1) for n in range(1, args.polylog_n + 1)]
        records = _run_map(_polylog_star, points, args.jobs)
    elif suite == "normality":
        records = _run_map(grid.check_random_normality, list(range(args.seed, args.seed + args.count)), args.jobs)
    else:  # argparse restricts choices
        raise UsageError(f"unknown suite {suite}")
    records.sort(key=lambda r: r["key"])
    echo = {"suite": suite}
    return echo, {"records": records}, _summary(records)


def _perfectness_star(point):
    return grid.check_perfectness_point(*point)


def _polylog_star(point):
    return grid.check_polylog_point(*point)


def cmd_measure(args):
    omegas = grid.parse_rational_list(args.omegas)
    rs = grid.parse_int_list(args.rs)
    place = Place.parse(args.place)
    with mpmath.mp.workprec(args.precision_bits):
        eps = mpmath.mpf(args.eps)
    try:
        rep = measures.measure(omegas, rs, as_rational(args.alpha), place, eps, args.precision_bits)
    except (measures.HypothesisViolation, measures.EpsilonRangeError) as exc:
        raise UsageError(str(exc)) from exc
    echo = {"omegas": [rational_str(w) for w in omegas], "rs": rs, "alpha": args.alpha, "place": str(place), "eps": args.eps}
    return echo, rep.to_json(), {"valid": rep.valid, "failed": 0}


def cmd_tables(args):
    if args.table == "corollary-thresholds":
        rows = measures.threshold_table(grid.parse_range(args.r or "3..10"), args.precision_bits)
        echo = {"table": args.table, "r": args.r or "3..10"}
    else:
        r = int(args.r or 5)
        exps = grid.parse_alpha_range(args.alphas)
        signs = (1,) if args.positive_only else (1, -1)
        rows = measures.mu_table(r, args.eps, exps, signs, args.precision_bits)
        echo = {"table": args.table, "r": r, "eps": args.eps, "alphas": args.alphas}
    notes = sum(1 for row in rows if row.get("paper_discrepancy"))
    return echo, {"rows": rows}, {"rows": len(rows), "discrepancies": notes, "failed": 0}


def cmd_hankel(args):
    if args.polylog_r is not None:
        f = normality.polylog_laurent_coeffs(args.polylog_r, 2 * args.n + 2)
        source = f"Li_{args.polylog_r}(1/z)"
    elif args.coeffs is not None:
        f = grid.parse_rational_list(args.coeffs)
        source = "coefficients"
    else:
        raise UsageError("give --polylog-r or --coeffs")
    try:
        lp = normality.laurent_pade(f, args.n)
    except normality.InsufficientTruncation as exc:
        raise UsageError(str(exc)) from exc
    results = {
        "source": source,
        "n": args.n,
        "hankel_det": rational_str(lp.hankel_det),
        "normal": lp.normal,
        "kernel_dim": lp.kernel_dim,
        "P": [rational_str(c) for c in lp.P],
        "Q": [rational_str(c) for c in lp.Q],
        "order": str(lp.order),
    }
    if args.polylog_r is not None and args.n >= 1:
        results["polylog_det"] = rational_str(normality.polylog_hankel_det(args.polylog_r, args.n))
    return {"source": source, "n": args.n}, results, {"failed": 0}


def cmd_determinant(args):
    cfg = SystemConfig.of(grid.parse_rational_list(args.omegas), grid.parse_int_list(args.rs), args.n)
    system = build_system(cfg, args.trunc_margin)
    cert = normality.delta_certificate(system, strict=False)
    results = {**cert.to_json(), "delta": [rational_str(c) for c in cert.coefficients]}
    echo = {k: v for k, v in cfg.to_json().items() if k != "k"}
    return echo, results, {"monomial_ok": cert.monomial_ok, "failed": 0 if cert.monomial_ok else 1}


def cmd_diag(args):
    omegas = grid.parse_rational_list(args.omegas)
    rs = grid.parse_int_list(args.rs)
    ns = grid.parse_range(args.ns)
    if args.kind == "coeff-growth":
        out = numeric.coeff_growth_diag(omegas, rs, ns)
        rows = out["rows"]
        summary = {"trend_ok": out["trend_ok"], "failed": 0 if out["trend_ok"] in (True, None) else 1}
    else:
        raw = numeric.remainder_decay_diag(omegas, rs, as_rational(args.alpha), ns, args.k)
        rows = numeric.decay_rows_json(raw)
        failed = [str(r["n"]) for r in rows if not r["pass"]]
        summary = {"failed": len(failed), "failures": failed}
    echo = {"kind": args.kind, "omegas": [rational_str(w) for w in omegas], "rs": rs, "ns": ns}
    return echo, {"rows": rows}, summary


# -- parser


def _add_common(parser: argparse.ArgumentParser, defaults: bool) -> None:
    def d(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument("--json", action="store_true", default=d(False), help="emit the RunReport as JSON")
    parser.add_argument("--precision-bits", type=int, default=d(measures.DEFAULT_PREC))
    parser.add_argument("--trunc-margin", type=int, default=d(3), help="extra series coefficients past the claimed order")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for grid suites")
    parser.add_argument("--timing", action="store_true", default=d(False), help="add wall time (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="binlog-pade", description=__doc__.splitlines()[0])
    _add_common(p, defaults=True)
    # same flags after the subcommand; SUPPRESS keeps them from resetting values given before it
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, defaults=False)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build P_{k,i,j} and certify remainder orders")
    c.add_argument("--omegas", required=True)
    c.add_argument("--rs", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, default=None, help="a single row; all rows when omitted")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="run a certificate suite over a grid")
    v.add_argument("suite", choices=["order", "integrality", "determinant", "perfectness", "hankel", "bijection", "normality"])
    v.add_argument("--omegas", default=None, help="single configuration instead of the grid")
    v.add_argument("--rs", default=None)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--omega-set", default=",".join(grid.DEFAULT_OMEGAS))
    v.add_argument("--max-m", type=int, default=2)
    v.add_argument("--max-sum-r", type=int, default=4)
    v.add_argument("--max-n", type=int, default=None, help="default 5, or 3 for the determinant suite")
    v.add_argument("--scaling", choices=["one-sided", "symmetric"], default="one-sided")
    v.add_argument("--max-omega", type=int, default=3)
    v.add_argument("--max-weight-sum", type=int, default=8)
    v.add_argument("--polylog-r", type=int, default=4)
    v.add_argument("--polylog-n", type=int, default=8)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=10)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("measure", parents=[common], help="constants of the independence measure")
    m.add_argument("--omegas", required=True)
    m.add_argument("--rs", required=True)
    m.add_argument("--alpha", required=True)
    m.add_argument("--place", default="inf")
    m.add_argument("--eps", required=True)
    m.set_defaults(func=cmd_measure)

    t = sub.add_parser("tables", parents=[common], help="regenerate the threshold and mu tables")
    t.add_argument("table", choices=["corollary-thresholds", "mu"])
    t.add_argument("--r", default=None, help="range like 3..10 (thresholds) or an integer (mu)")
    t.add_argument("--eps", default="0.1")
    t.add_argument("--alphas", default="1e16..1e22")
    t.add_argument("--positive-only", action="store_true")
    t.set_defaults(func=cmd_tables)

    h = sub.add_parser("hankel", parents=[common], help="Laurent Pade normality via Hankel determinants")
    h.add_argument("--polylog-r", type=int, default=None)
    h.add_argument("--coeffs", default=None, help="f_0,f_1,... of f = sum f_k z^(-k-1)")
    h.add_argument("--n", type=int, required=True)
    h.set_defaults(func=cmd_hankel)

    dt = sub.add_parser("determinant", parents=[common], help="Delta(z) monomial certificate for one system")
    dt.add_argument("--omegas", required=True)
    dt.add_argument("--rs", required=True)
    dt.add_argument("--n", type=int, required=True)
    dt.set_defaults(func=cmd_determinant)

    d = sub.add_parser("diag", parents=[common], help="finite-n growth diagnostics")
    d.add_argument("kind", choices=["coeff-growth", "remainder-decay"])
    d.add_argument("--omegas", default="0")
    d.add_argument("--rs", default="2")
    d.add_argument("--ns", default="10,20,30")
    d.add_argument("--alpha", default="100")
    d.add_argument("--k", type=int, default=1)
    d.set_defaults(func=cmd_diag)
    return p


def _human(report: dict) -> str:
    lines = [f"{report['command']['name']}: {json.dumps(report['config'])}"]
    res = report["results"]
    if "records" in res:
        for r in res["records"]:
            if not r.get("pass", True):
                lines.append(f"  FAIL {r['key']}")
    if "rows" in res and report["command"]["name"] in ("tables", "diag"):
        for r in res["rows"]:
            lines.append("  " + "  ".join(f"{k}={v}" for k, v in r.items() if v is not None))
    if report["command"]["name"] in ("hankel", "determinant"):
        for k, v in res.items():
            lines.append(f"  {k} = {v}")
    if report["command"]["name"] == "measure":
        for k in ("C_omega", "A", "B", "U", "V", "mu", "C_eps", "valid", "reason"):
            lines.append(f"  {k} = {res[k]}")
    lines.append("summary: " + json.dumps(report["summary"]))
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits < 128:
        parser.error("--precision-bits must be at least 128")
    if args.trunc_margin < 1:
        parser.error("--trunc-margin must be at least 1")
    start = time.perf_counter()
    try:
        echo, results, summary = args.func(args)
    except (ConfigError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": {"name": args.command, "argv": argv},
        "config": echo,
        "results": results,
        "summary": summary,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(_human(report))
    return 1 if summary.get("failed") else 0


if __name__ == "__main__":
    sys.exit(main())
