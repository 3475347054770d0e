"""Deterministic structured output records and their CSV serialization."""

import csv
import io
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OutputRecord:
    """Ordered (label, value) rows for one command run, inputs echoed first."""

    command: str
    rows: tuple

    def __init__(self, command, rows):
        object.__setattr__(self, "command", command)
        object.__setattr__(self, "rows", tuple((str(k), v) for k, v in rows))


def format_value(value) -> str:
    """Fixed, round-trip-exact text form: full float precision, booleans as true/false."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render_csv(record: OutputRecord) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "value"])
    writer.writerow(["command", record.command])
    for label, value in record.rows:
        writer.writerow([label, format_value(value)])
    return buf.getvalue()


def emit_csv(record: OutputRecord, dest) -> None:
    """Write the record to a path or text stream; identical records give identical bytes."""
    text = render_csv(record)
    if hasattr(dest, "write"):
        dest.write(text)
        return
    with open(dest, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
