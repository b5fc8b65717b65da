"""Loading and validation of xenoclass fraction-table CSVs.

The schemas are the primary component's external interface and are
duplicated here on purpose: this package never imports xenoclass.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

CLASS_COLUMNS = {
    "edges": ["essential", "ambiguous_in_h", "ambiguous_not_in_h",
              "forbidden"],
    "pairs": ["essential", "forbidden", "ambiguous_present",
              "ambiguous_absent"],
}
CLASS_COLUMNS["qpairs"] = CLASS_COLUMNS["pairs"]
CLASS_COLUMNS["contraction"] = CLASS_COLUMNS["pairs"]


class SchemaError(ValueError):
    """CSV does not match the expected fraction-table schema."""


@dataclass(frozen=True)
class SummaryRow:
    rates: str
    means: dict[str, float]
    included_pct: float
    n: int


@dataclass(frozen=True)
class SummaryTable:
    kind: str
    rows: list[SummaryRow]


def _read(path: str) -> tuple[list[str], list[dict[str, str]]]:
    try:
        with open(path, newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None:
                raise SchemaError(f"{path}: empty file")
            return list(reader.fieldnames), list(reader)
    except OSError as e:
        raise SchemaError(f"{path}: {e}") from None


def _float(row: dict[str, str], col: str, path: str) -> float:
    try:
        return float(row[col])
    except (ValueError, KeyError):
        raise SchemaError(
            f"{path}: bad value {row.get(col)!r} in column {col!r}") from None


def load_summary(path: str, kind: str) -> SummaryTable:
    """Mean-fraction table written by `xenoclass stats --csv`."""
    cols = CLASS_COLUMNS[kind]
    header, records = _read(path)
    want = ["rates"] + cols + ["included_pct", "n"]
    if header != want:
        raise SchemaError(f"{path}: header {header} != expected {want}")
    if not records:
        raise SchemaError(f"{path}: no data rows")
    rows = []
    for rec in records:
        means = {c: _float(rec, c, path) for c in cols}
        s = sum(means.values())
        if abs(s - 1.0) > 1e-3 and s != 0.0:
            raise SchemaError(f"{path}: fractions sum to {s:.6f} "
                              f"in rates={rec['rates']!r}")
        rows.append(SummaryRow(rec["rates"], means,
                               _float(rec, "included_pct", path),
                               int(_float(rec, "n", path))))
    return SummaryTable(kind, rows)


def load_scenarios(path: str, kind: str) -> dict[str, dict[str, list[float]]]:
    """Per-scenario table from `--scenario-csv`: rates -> column -> values."""
    cols = CLASS_COLUMNS[kind]
    header, records = _read(path)
    if header != ["rates"] + cols:
        raise SchemaError(f"{path}: header {header} != expected "
                          f"{['rates'] + cols}")
    out: dict[str, dict[str, list[float]]] = {}
    for rec in records:
        per = out.setdefault(rec["rates"], {c: [] for c in cols})
        for c in cols:
            per[c].append(_float(rec, c, path))
    if not out:
        raise SchemaError(f"{path}: no data rows")
    return out
