"""JSON Lines / CSV report streams.

Layout of every report:

* line 1: header (JSON object with ``"header": true``, tool, version, the
  echoed command line and a UTC timestamp). In CSV it is prefixed by ``# ``.
* then one record per line, keys in the fixed order declared by the command.
  CSV adds a column-name row and JSON-encodes nested values.
* last line: ``{"summary": {...}}`` (CSV: ``# summary {...}``).

Everything after the header line is deterministic for a given command line.
"""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from typing import IO, Sequence

from . import __version__


def header(argv: Sequence[str]) -> dict:
    return {
        "header": True,
        "tool": "monopp",
        "version": __version__,
        "command": list(argv),
        "timestamp": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    }


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def render(records: Sequence[dict], keys: Sequence[str], fmt: str, summary: dict) -> str:
    """Report body (everything except the header line)."""
    buf = io.StringIO()
    if fmt == "jsonl":
        for rec in records:
            buf.write(_dumps({k: rec.get(k) for k in keys}) + "\n")
        buf.write(_dumps({"summary": summary}) + "\n")
    elif fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for rec in records:
            row = []
            for k in keys:
                v = rec.get(k)
                row.append(v if isinstance(v, (int, str)) and not isinstance(v, bool) else _dumps(v))
            w.writerow(row)
        buf.write("# summary " + _dumps(summary) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return buf.getvalue()


def write_report(stream: IO[str], argv: Sequence[str], records: Sequence[dict],
                 keys: Sequence[str], fmt: str, summary: dict) -> None:
    head = _dumps(header(argv))
    stream.write(("# " + head if fmt == "csv" else head) + "\n")
    stream.write(render(records, keys, fmt, summary))
    stream.flush()


def body_of(text: str) -> str:
    """Strip the header line from a report."""
    return text.split("\n", 1)[1] if "\n" in text else ""


def read_jsonl_records(text: str) -> list[dict]:
    """Record lines of a JSONL report or golden file (header/summary skipped)."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        if obj.get("header") or "summary" in obj:
            continue
        out.append(obj)
    return out
