"""Run every CLI suite into reports/ (with --derive) and print the summaries."""

import argparse
from pathlib import Path

from bolcheck.cli import main as cli_main
from bolcheck.suites import SUITES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--jobs", default="4")
    ap.add_argument("--no-derive", action="store_true")
    args = ap.parse_args()
    Path(args.out_dir).mkdir(exist_ok=True)
    codes = {}
    for s in SUITES:
        argv = ["--suite", s, "--jobs", args.jobs, "--out", f"{args.out_dir}/{s}"]
        if s in ("siegel-recovery", "delta-eigen", "cofactor", "center-projection"):
            argv += ["--n", "1,2,3"]
        if s == "siegel-recovery":
            argv += ["--symbolic-k"]
        if not args.no_derive:
            argv.append("--derive")
        codes[s] = cli_main(argv)
    print({s: c for s, c in codes.items()})


if __name__ == "__main__":
    main()
