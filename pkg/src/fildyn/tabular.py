"""Deterministic CSV / JSON table writers.

Floats are emitted in shortest round-trip decimal form (``repr``), so
parsing an output file back reproduces every value bit-exactly; lines end
with LF.  Nothing time- or host-dependent is ever written, which makes
identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from collections.abc import Iterable, Sequence
from contextlib import contextmanager

import numpy as np


def fmt_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, np.floating):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def json_ready(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (int, float)):
        return value
    return str(value)


@contextmanager
def open_out(path: str | None):
    """Writable text stream for ``path``; None or '-' means stdout."""
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def write_csv(
    stream: io.TextIOBase,
    columns: Sequence[str],
    rows: Iterable[dict],
    footers: Sequence[str] = (),
) -> int:
    """Write a header, one line per row dict, then '#'-prefixed footers.

    Returns the number of data rows written (useful for streamed rows).
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    count = 0
    for row in rows:
        writer.writerow([fmt_value(row[col]) for col in columns])
        count += 1
    for line in footers:
        stream.write(f"# {line}\n")
    return count


def write_json(stream: io.TextIOBase, meta: dict, rows: Iterable[dict]) -> int:
    """Write ``{"meta": ..., "rows": [...]}`` with sorted keys."""
    row_list = [{key: json_ready(val) for key, val in row.items()} for row in rows]
    payload = {"meta": meta, "rows": row_list}
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")
    return len(row_list)
