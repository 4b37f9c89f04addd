"""Shared CSV emission for the drift/bias/frequency time series."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Mapping


def write_csv(path: str | Path, fieldnames: list[str], rows: Iterable[Mapping]) -> None:
    """Write rows deterministically: fixed field order, '\\n' line endings,
    floats via repr (shortest round-trip form)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(row[k]) for k in fieldnames})


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(float(value))
    return str(value)
