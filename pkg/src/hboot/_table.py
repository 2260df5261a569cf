"""Plain tables and the half-away-from-zero number formatting used in reports."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal


def fmt(x: float, places: int) -> str:
    """Round the exact binary value of ``x`` half away from zero.

    >>> fmt(0.125, 2), fmt(-0.125, 2), fmt(90.25, 1)
    ('0.13', '-0.13', '90.3')
    """
    q = Decimal(1).scaleb(-places)
    out = Decimal(float(x)).quantize(q, rounding=ROUND_HALF_UP)
    if out == 0:
        out = abs(out)
    return f"{out:.{places}f}"


@dataclass
class Table:
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def records(self) -> list[dict[str, str]]:
        return [dict(zip(self.columns, row)) for row in self.rows]
