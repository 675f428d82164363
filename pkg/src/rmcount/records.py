"""Run records and their JSON / CSV serializations.

JSON is canonical (sorted keys, two-space indent, trailing newline); CSV is a
flat projection with a fixed leading column set.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

from rmcount import __version__

CSV_COLUMNS = [
    "m", "r", "constraint", "tau", "t", "delta", "seed",
    "log2_Z_hat", "Z_hat", "rate", "exact_Z", "exact_rate",
    "steps", "converged", "wall_ms",
]


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def git_blob_hash(text: str) -> str:
    """SHA-1 of ``text`` with a git blob header, as ``git hash-object`` computes it."""
    data = text.encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


@dataclass
class RunRecord:
    command: str
    config: dict
    result: dict
    wall_ms: float = 0.0
    version: str = __version__
    rows: list[dict] = field(default_factory=list)

    @property
    def config_hash(self) -> str:
        return git_blob_hash(canonical_json(self.config))

    def payload(self) -> dict:
        """The deterministic part: identical for identical configs."""
        return {"command": self.command, "config": self.config, "result": self.result, "rows": self.rows}

    def to_dict(self) -> dict:
        out = self.payload()
        out.update(config_hash=self.config_hash, version=self.version, wall_ms=self.wall_ms)
        return out

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> RunRecord:
        d = json.loads(text)
        return cls(d["command"], d["config"], d["result"], d["wall_ms"], d["version"], d.get("rows", []))

    def to_csv(self) -> str:
        rows = self.rows or [self.result]
        extra = sorted({k for row in rows for k in row} - set(CSV_COLUMNS))
        columns = CSV_COLUMNS + extra
        lines = [columns]
        for row in rows:
            cells = {c: format_cell(row.get(c)) for c in columns}
            cells["wall_ms"] = format_cell(row.get("wall_ms", self.wall_ms))
            lines.append([cells[c] for c in columns])
        return write_csv(lines)


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            return str(value)
        return repr(value)
    return str(value)


def write_csv(rows: list[list[str]]) -> str:
    """``\n``-terminated CSV.  Rows holding a bare ``\r`` are fully quoted, since the
    stdlib writer only quotes line-terminator characters it was told about."""
    buf = io.StringIO()
    minimal = csv.writer(buf, lineterminator="\n")
    quoted = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_ALL)
    for row in rows:
        (quoted if any("\r" in cell for cell in row) else minimal).writerow(row)
    return buf.getvalue()


def csv_roundtrip(text: str) -> str:
    """Parse and re-emit CSV text; the output equals the input for records from :meth:`RunRecord.to_csv`."""
    return write_csv(list(csv.reader(io.StringIO(text, newline=""))))


def pretty_count(value: float) -> str:
    """Paper-style rendering: ``80``, ``278.446`` or ``2.926x10^8``."""
    if math.isinf(value):
        return "inf"
    if value < 1e5:
        return f"{value:.6g}"
    mantissa, exponent = f"{value:.3e}".split("e")
    return f"{mantissa}x10^{int(exponent)}"
