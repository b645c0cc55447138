"""Run every exact certificate suite over the default grids and print a summary.

Each suite goes through the CLI entry point, so the JSON reports written with
--out are the same ones `binlog-pade verify <suite> --json` produces.
"""
import argparse
import contextlib
import io
import json
import pathlib

from binlog_pade.cli import main as cli_main

SUITES = ["order", "bijection", "integrality", "determinant", "perfectness", "hankel", "normality"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--scaling", choices=["one-sided", "symmetric"], default="one-sided")
    ap.add_argument("--out", type=pathlib.Path, default=None, help="directory for per-suite JSON reports")
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for suite in SUITES:
        argv = ["verify", suite, "--json", "--jobs", str(args.jobs)]
        if suite == "integrality":
            argv += ["--scaling", args.scaling]
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(argv)
        report = json.loads(buf.getvalue())
        s = report["summary"]
        print(f"{suite:<12} {s['passed']:>4}/{s['total']:<4} exit {code}")
        if args.out:
            (args.out / f"{suite}.json").write_text(buf.getvalue())
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
