"""Command line driver: ``bolcheck --suite NAME [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .report import CheckRecord, render_json, render_markdown, render_timing, summary
from .suites import SUITES, ConfigError, SuiteConfig, expand, run_point

log = logging.getLogger("bolcheck")


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _index(text):
    """'a,b;b,c' -> [[a, b], [b, c]] with entries kept as strings (rationals allowed)."""
    rows = [[x.strip() for x in row.split(",")] for row in text.split(";")]
    if any(len(r) != len(rows) for r in rows):
        raise ConfigError(f"index matrix {text!r} is not square")
    for a in range(len(rows)):
        for b in range(a):
            if rows[a][b] != rows[b][a]:
                raise ConfigError(f"index matrix {text!r} is not symmetric")
    return [[int(x) if x.lstrip("-").isdigit() else x for x in r] for r in rows]


def parser():
    p = argparse.ArgumentParser(prog="bolcheck", description="Exact verification of the Bol-type identities.")
    p.add_argument("--suite", choices=SUITES, default=None)
    p.add_argument("--config", help="JSON file with SuiteConfig fields; flags override it")
    p.add_argument("--n", type=_ints, help="comma separated list of n")
    p.add_argument("--j", type=_ints, help="comma separated list of j (Jacobi suites)")
    p.add_argument("--r-max", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--l-max", type=int)
    p.add_argument("--index", help="symmetric index matrix, rows split by ';', entries by ','")
    p.add_argument("--symbolic-k", action="store_true", default=None)
    p.add_argument("--derive", action="store_true", default=None,
                   help="report machine-derived constants with status 'derived' instead of comparing")
    p.add_argument("--jobs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output prefix; writes PREFIX.json, PREFIX.md and PREFIX.timing.json")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_config(args) -> SuiteConfig:
    base = {}
    if args.config:
        try:
            base = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        if not isinstance(base, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(base) - set(SuiteConfig.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    flags = {
        "suite": args.suite,
        "n": args.n,
        "j": args.j,
        "r_max": args.r_max,
        "m_max": args.m_max,
        "l_max": args.l_max,
        "symbolic_k": args.symbolic_k,
        "derive": args.derive,
        "jobs": args.jobs,
        "seed": args.seed,
        "out": args.out,
    }
    if args.index:
        flags["indices"] = [_index(args.index)]
    base.update({k: v for k, v in flags.items() if v is not None})
    if "suite" not in base:
        raise ConfigError("no suite given (--suite or config 'suite')")
    if base["suite"] == "bol-extension" and "n" not in base and "pairs" not in base and "j" not in base:
        base["pairs"] = [[n, j] for n in (1, 2) for j in (1, 2)]
    if args.index and "pairs" not in base and "j" not in base:
        size = len(base["indices"][0])
        base["j"] = [size]
        base.setdefault("n", [1, 2])
    return SuiteConfig(**base).validate()


def run(cfg: SuiteConfig):
    points = expand(cfg)
    if cfg.jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            chunks = list(ex.map(run_point, points))
    else:
        chunks = [run_point(p) for p in points]
    records: list[CheckRecord] = [r for c in chunks for r in c]
    return sorted(records, key=CheckRecord.sort_key)


def main(argv=None):
    args = parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = build_config(args)
    except (ConfigError, TypeError) as exc:
        print(f"bolcheck: config error: {exc}", file=sys.stderr)
        return 2
    records = run(cfg)
    params = cfg.public()
    js = render_json(cfg.suite, params, records)
    md = render_markdown(cfg.suite, params, records)
    if cfg.out:
        prefix = Path(cfg.out)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        Path(f"{prefix}.json").write_text(js)
        Path(f"{prefix}.md").write_text(md)
        Path(f"{prefix}.timing.json").write_text(render_timing(records))
    else:
        sys.stdout.write(md)
    s = summary(records)
    print(f"{cfg.suite}: pass {s['pass']} fail {s['fail']} derived {s['derived']}", file=sys.stderr)
    return 1 if s["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
