"""Check records and deterministic JSON / Markdown rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

STATUSES = ("pass", "fail", "derived")
PROVENANCE = ("PAPER", "TRIVIAL", "DERIVED")


@dataclass
class CheckRecord:
    name: str
    params: dict
    status: str
    expected: str
    provenance: str
    actual: str
    detail: list = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if self.provenance not in PROVENANCE:
            raise ValueError(f"bad provenance {self.provenance!r}")
        if self.status == "pass" and self.provenance in ("PAPER", "TRIVIAL") and self.expected != self.actual:
            raise ValueError(f"{self.name}: pass with expected != actual")

    def sort_key(self):
        return (self.name, json.dumps(self.params, sort_keys=True))


def check(name, params, ok, expected, actual, provenance="DERIVED", detail=None, derived=False):
    """Build a record; ``derived`` marks a machine-derived constant."""
    status = "derived" if derived else ("pass" if ok else "fail")
    return CheckRecord(name, dict(params), status, str(expected), provenance, str(actual), list(detail or []))


def summary(records):
    out = {s: 0 for s in STATUSES}
    for r in records:
        out[r.status] += 1
    return out


def _stable(rec: CheckRecord):
    d = asdict(rec)
    d.pop("elapsed")
    return d


def render_json(suite, params, records):
    records = sorted(records, key=CheckRecord.sort_key)
    doc = {
        "suite": suite,
        "params": params,
        "checks": [_stable(r) for r in records],
        "summary": summary(records),
    }
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def render_timing(records):
    records = sorted(records, key=CheckRecord.sort_key)
    rows = [{"name": r.name, "params": r.params, "elapsed": round(r.elapsed, 4)} for r in records]
    return json.dumps({"elapsed": rows}, indent=1, sort_keys=True) + "\n"


def _cell(x):
    return str(x).replace("|", "\\|").replace("\n", " ")


def render_markdown(suite, params, records):
    records = sorted(records, key=CheckRecord.sort_key)
    s = summary(records)
    lines = [
        f"# {suite}",
        "",
        "params: `" + json.dumps(params, sort_keys=True) + "`",
        "",
        f"pass {s['pass']} / fail {s['fail']} / derived {s['derived']}",
        "",
        "| check | params | status | expected | provenance | actual |",
        "|---|---|---|---|---|---|",
    ]
    for r in records:
        lines.append(
            "| "
            + " | ".join(
                _cell(x)
                for x in (r.name, json.dumps(r.params, sort_keys=True), r.status, r.expected, r.provenance, r.actual)
            )
            + " |"
        )
    tables = [r for r in records if r.detail]
    for r in tables:
        lines += ["", f"## {r.name} {json.dumps(r.params, sort_keys=True)}", ""]
        lines += [f"    {_cell(row)}" for row in r.detail]
    return "\n".join(lines) + "\n"
