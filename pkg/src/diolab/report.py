"""Report envelopes, deterministic serialization, and baseline comparison.

CSV bodies carry the header and rows only (no timestamp), so identical
configs produce byte-identical files. Big integers are serialized as decimal
strings and exact rationals as "num/den"; only explicitly log-scale columns
are floats.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    """Hash of the scan-defining part of a config (output/baseline excluded)."""
    core = {k: v for k, v in config.items() if k not in ("output", "baseline")}
    return hashlib.sha256(canonical_json(core).encode()).hexdigest()


def render_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    return str(v)


@dataclass(frozen=True)
class ReportEnvelope:
    tool: str
    version: str
    kind: str
    config_hash: str
    created: str
    columns: tuple[str, ...]
    rows: tuple[dict, ...]
    summary: dict
    tracked: dict = field(default_factory=dict)

    @classmethod
    def build(cls, kind: str, cfg_hash: str, columns, rows, summary,
              tracked=None, version: str = "0.1.0") -> "ReportEnvelope":
        return cls("diolab", version, kind, cfg_hash,
                   datetime.datetime.now(datetime.timezone.utc).isoformat(),
                   tuple(columns), tuple(rows), dict(summary),
                   dict(tracked or {}))

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(render_cell(row.get(c)) for c in self.columns))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "envelope": {
                "tool": self.tool, "version": self.version, "kind": self.kind,
                "config_hash": self.config_hash, "created": self.created,
            },
            "columns": list(self.columns),
            "rows": [{c: render_cell(r.get(c)) for c in self.columns}
                     for r in self.rows],
            "summary": {k: render_cell(v) for k, v in sorted(self.summary.items())},
            "tracked": {k: v for k, v in sorted(self.tracked.items())},
        }
        return json.dumps(payload, sort_keys=True, indent=1) + "\n"

    def write(self, path: str, fmt: str) -> None:
        text = self.to_csv() if fmt == "csv" else self.to_json()
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


@dataclass(frozen=True)
class BaselineComparison:
    mode: str                       # "recorded" or "compared"
    results: tuple[tuple[str, str, float | None, float | None], ...]
    # (statistic, status, baseline value, new value)

    @property
    def passed(self) -> bool:
        return all(status in ("pass", "recorded") for _, status, _, _ in self.results)


def compare_baseline(envelope: ReportEnvelope, baseline_path: str,
                     tolerance: float = 0.02) -> BaselineComparison:
    """Check tracked statistics against a stored baseline, or record one.

    Only `tracked` statistics participate: budget-flagged row content never
    feeds a baseline, so budget perturbations that only change flagged rows
    still pass.
    """
    if not os.path.exists(baseline_path):
        payload = {"version": 1, "kind": envelope.kind,
                   "statistics": dict(sorted(envelope.tracked.items()))}
        with open(baseline_path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
        return BaselineComparison(
            "recorded",
            tuple((k, "recorded", None, v) for k, v in sorted(envelope.tracked.items())))
    with open(baseline_path, encoding="utf-8") as fh:
        stored = json.load(fh)
    results = []
    for key, base_val in sorted(stored.get("statistics", {}).items()):
        new_val = envelope.tracked.get(key)
        if new_val is None:
            results.append((key, "missing", base_val, None))
        elif isinstance(base_val, (int, float)) and abs(new_val - base_val) <= tolerance:
            results.append((key, "pass", base_val, new_val))
        elif base_val == new_val:
            results.append((key, "pass", base_val, new_val))
        else:
            results.append((key, "fail", base_val, new_val))
    return BaselineComparison("compared", tuple(results))


def parallel_map(fn, chunks, degree: int):
    """Ordered map over immutable chunk descriptors; degree 1 stays serial."""
    if degree <= 1 or len(chunks) <= 1:
        return [fn(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=degree) as pool:
        return list(pool.map(fn, chunks))


def split_range(start: int, stop: int, parts: int) -> list[tuple[int, int]]:
    """Split [start, stop] into <= parts contiguous inclusive chunks."""
    total = stop - start + 1
    if total <= 0:
        return []
    parts = max(1, min(parts, total))
    size = -(-total // parts)
    out = []
    lo = start
    while lo <= stop:
        hi = min(lo + size - 1, stop)
        out.append((lo, hi))
        lo = hi + 1
    return out
