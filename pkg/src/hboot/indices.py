"""h-index and its field-normalised variants.

Covered here:

* Hirsch's h-index of a citation profile;
* the Iglesias-Pecharroman theoretical h and normalisation factor
  ``f = (chi_ref / chi) ** (2/3)``;
* the n-index (h over the field's top journal h-index);
* Radicchi's relative indicator ``c / c0`` and the generalised h built on it;
* descriptive statistics of a field sample.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "CitationProfile",
    "FieldNorms",
    "IndexKind",
    "IndexSample",
    "SummaryStats",
    "h_index",
    "theoretical_h_iglesias",
    "normalization_factor",
    "normalized_h",
    "n_index",
    "cf_scores",
    "generalized_h",
    "summary_stats",
]


@dataclass(frozen=True)
class CitationProfile:
    researcher_id: str
    field_id: str
    citations: tuple[int, ...] = ()

    def __post_init__(self):
        cites = tuple(int(c) for c in self.citations)
        if any(c < 0 for c in cites):
            raise DomainError(f"negative citation count for researcher {self.researcher_id!r}")
        object.__setattr__(self, "citations", cites)

    @property
    def n_papers(self) -> int:
        return len(self.citations)


@dataclass(frozen=True)
class FieldNorms:
    field_id: str
    chi: float
    chi_ref: float
    c0: float
    n0: float
    journal_h_max: int

    def __post_init__(self):
        for name in ("chi", "chi_ref", "c0", "n0"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be a positive finite number, got {value!r}")
        if int(self.journal_h_max) != self.journal_h_max or self.journal_h_max < 1:
            raise DomainError(f"journal_h_max must be an integer >= 1, got {self.journal_h_max!r}")


class IndexKind(str, enum.Enum):
    RAW_H = "raw_h"
    NORMALIZED_H = "normalized_h"
    N_INDEX = "n_index"
    GENERALIZED_H = "generalized_h"


@dataclass(frozen=True)
class IndexSample:
    """One field's index values, one per researcher.

    ``ids`` optionally carries researcher ids parallel to ``values`` so that
    samples can be written back out row by row.
    """

    field_id: str
    values: tuple[float, ...]
    kind: IndexKind = IndexKind.RAW_H
    ids: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise DomainError(f"sample for field {self.field_id!r} is empty")
        if any(not (v >= 0) or math.isinf(v) for v in vals):
            raise DomainError(f"sample for field {self.field_id!r} has negative or non-finite values")
        kind = IndexKind(self.kind)
        if kind is IndexKind.RAW_H and any(v != int(v) for v in vals):
            raise DomainError(f"raw h values for field {self.field_id!r} must be integers")
        if self.ids is not None:
            ids = tuple(str(i) for i in self.ids)
            if len(ids) != len(vals):
                raise DomainError("ids and values differ in length")
            object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", kind)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    median: float
    sd: float
    min: float
    max: float
    count: int


def _citations(profile) -> np.ndarray:
    cites = profile.citations if isinstance(profile, CitationProfile) else profile
    arr = np.asarray(cites, dtype=np.int64).ravel()
    if arr.size and arr.min() < 0:
        raise DomainError("citation counts must be non-negative")
    return arr


def h_index(profile: CitationProfile | Sequence[int]) -> int:
    """Largest k such that k papers have at least k citations each.

    Accepts a ``CitationProfile`` or a bare sequence of counts.

    >>> h_index([5, 4, 3, 2, 1])
    3
    """
    arr = _citations(profile)
    if arr.size == 0:
        return 0
    desc = np.sort(arr)[::-1]
    # desc[k-1] >= k holds for a prefix of ranks, so counting is enough.
    return int(np.count_nonzero(desc >= np.arange(1, desc.size + 1)))


def theoretical_h_iglesias(n_p: int, chi: float) -> float:
    """Theoretical h under a Zipf citation model: ``(n_p/4)**(1/3) * chi**(2/3)``."""
    if not n_p >= 1:
        raise DomainError(f"paper count must be >= 1, got {n_p!r}")
    if not chi > 0:
        raise DomainError(f"chi must be positive, got {chi!r}")
    return _cbrt(n_p / 4.0) * _cbrt(chi) ** 2


def _cbrt(x: float) -> float:
    # x ** (1/3) misses perfect cubes (0.125 -> 0.49999999999999994).
    return float(np.cbrt(x))


def normalization_factor(norms: FieldNorms) -> float:
    """Field factor ``(chi_ref / chi) ** (2/3)``; exactly 1 for the reference field."""
    if not (norms.chi > 0 and norms.chi_ref > 0):
        raise DomainError("chi and chi_ref must be positive")
    if norms.chi == norms.chi_ref:
        return 1.0
    return _cbrt(norms.chi_ref / norms.chi) ** 2


def normalized_h(h: float, f: float) -> float:
    if not f > 0:
        raise DomainError(f"normalisation factor must be positive, got {f!r}")
    if h < 0:
        raise DomainError(f"h must be non-negative, got {h!r}")
    return float(f * h)


def n_index(h: float, journal_h_max: int) -> float:
    if not journal_h_max >= 1:
        raise DomainError(f"journal_h_max must be >= 1, got {journal_h_max!r}")
    return h / journal_h_max


def cf_scores(profile: CitationProfile | Sequence[int], c0: float) -> list[float]:
    """Per-paper relative indicator ``c / c0`` in input order."""
    if not c0 > 0:
        raise DomainError(f"c0 must be positive, got {c0!r}")
    return [c / c0 for c in _citations(profile).tolist()]


def generalized_h(profile: CitationProfile | Sequence[int], c0: float, n0: float) -> float:
    """Last reduced rank ``r / n0`` whose relative indicator is strictly larger.

    Papers are ranked by ``c / c0`` descending.  The comparison
    ``c / c0 > r / n0`` is evaluated as ``c * n0 > r * c0`` so that jointly
    rescaling citations and ``c0`` cannot flip it through rounding.
    Returns 0.0 when no rank qualifies.

    >>> generalized_h([10, 10, 10, 10], c0=2, n0=2)
    2.0
    """
    if not c0 > 0:
        raise DomainError(f"c0 must be positive, got {c0!r}")
    if not n0 > 0:
        raise DomainError(f"n0 must be positive, got {n0!r}")
    arr = _citations(profile)
    if arr.size == 0:
        return 0.0
    desc = np.sort(arr)[::-1].astype(np.float64)
    ranks = np.arange(1, desc.size + 1, dtype=np.float64)
    ok = desc * n0 > ranks * c0
    if not ok[0]:
        return 0.0
    # ok is a prefix (c descending, r increasing); the last True is its length.
    r = int(np.argmin(ok)) if not ok.all() else desc.size
    return r / n0


def summary_stats(sample: IndexSample | Iterable[float]) -> SummaryStats:
    """Mean, median (midpoint for even n), sample sd (n-1), min, max, count."""
    values = sample.values if isinstance(sample, IndexSample) else tuple(sample)
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise DomainError("summary statistics of an empty sample")
    sd = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
    lo, hi = float(arr.min()), float(arr.max())
    if lo == hi:
        sd = 0.0
    mean = min(max(float(arr.mean()), lo), hi)
    return SummaryStats(mean=mean, median=float(np.median(arr)), sd=sd,
                        min=lo, max=hi, count=int(arr.size))
