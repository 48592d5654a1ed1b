"""Report serialization: canonical JSON lines, CSV flattening, config hashes.

Reports are reproducible byte-for-byte for a fixed (config, seed, workers):
keys are sorted, floats use repr, and volatile fields (wall-clock timings)
are nulled unless explicitly requested.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()[:16]


def _flatten(prefix: str, value, out: dict) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, (list, tuple)):
        out[prefix] = json.dumps(value)
    else:
        out[prefix] = value


def flatten_record(record: dict) -> dict:
    out: dict = {}
    _flatten("", record, out)
    return out


def render_records(records: list[dict], fmt: str) -> str:
    """JSON-lines or CSV text for a list of report dicts."""
    if fmt == "json":
        return "".join(canonical_json(r) + "\n" for r in records)
    if fmt == "csv":
        flat = [flatten_record(r) for r in records]
        cols = sorted({k for r in flat for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for r in flat:
            writer.writerow(r)
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def write_report(records: list[dict], out: Path | str | None, fmt: str) -> str:
    text = render_records(records, fmt)
    if out is not None:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    return text
