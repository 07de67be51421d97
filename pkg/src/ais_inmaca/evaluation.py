"""Nucleotide-level prediction scoring: confusion counts, SN, SP, CC.

Regions are 1-based inclusive [start, end] intervals; predictions and truth
are compared position by position over a sequence of known length.  The
correlation coefficient is

    CC = (TP*TN - FP*FN) / sqrt(AN * PP * AP * PN)

and is reported as undefined (None) whenever a factor under the root is
zero; callers that need a total function (the trainer's fitness) map
undefined to 0.0 explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParseError

Region = tuple[int, int]


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        for name in ("tp", "fp", "tn", "fn"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            tp=self.tp + other.tp,
            fp=self.fp + other.fp,
            tn=self.tn + other.tn,
            fn=self.fn + other.fn,
        )


@dataclass(frozen=True)
class DerivedCounts:
    ap: int  # actual positives    TP + FN
    an: int  # actual negatives    TN + FP
    pp: int  # predicted positives TP + FP
    pn: int  # predicted negatives TN + FN


@dataclass(frozen=True)
class MetricsReport:
    """Derived metrics; None marks an undefined (degenerate) value."""

    sn: float | None
    sp: float | None
    accuracy: float
    cc: float | None


def _mark_positions(regions: list[Region], seq_len: int, what: str) -> bytearray:
    mask = bytearray(seq_len)
    for start, end in regions:
        if start > end:
            raise ValueError(f"{what} region ({start}, {end}) is inverted")
        if start < 1 or end > seq_len:
            raise ValueError(
                f"{what} region ({start}, {end}) outside sequence bounds [1, {seq_len}]"
            )
        for pos in range(start - 1, end):
            mask[pos] = 1
    return mask


def confusion_from_regions(pred: list[Region], truth: list[Region], seq_len: int) -> ConfusionCounts:
    """Position-by-position comparison of predicted vs true regions."""
    if seq_len < 1:
        raise ValueError("sequence length must be >= 1")
    p = _mark_positions(pred, seq_len, "predicted")
    t = _mark_positions(truth, seq_len, "truth")
    tp = fp = tn = fn = 0
    for pi, ti in zip(p, t):
        if pi and ti:
            tp += 1
        elif pi and not ti:
            fp += 1
        elif ti:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def derive(counts: ConfusionCounts) -> DerivedCounts:
    return DerivedCounts(
        ap=counts.tp + counts.fn,
        an=counts.tn + counts.fp,
        pp=counts.tp + counts.fp,
        pn=counts.tn + counts.fn,
    )


def sensitivity(counts: ConfusionCounts) -> float | None:
    """TP/(TP+FN): fraction of actual positives found; None if no positives."""
    denom = counts.tp + counts.fn
    if denom == 0:
        return None
    return counts.tp / denom


def specificity(counts: ConfusionCounts) -> float | None:
    """TN/(TN+FP): fraction of actual negatives kept; None if no negatives."""
    denom = counts.tn + counts.fp
    if denom == 0:
        return None
    return counts.tn / denom


def correlation(counts: ConfusionCounts) -> float | None:
    """CC over exact integer products; None when the root has a zero factor."""
    d = derive(counts)
    prod = d.an * d.pp * d.ap * d.pn
    if prod == 0:
        return None
    return (counts.tp * counts.tn - counts.fp * counts.fn) / math.sqrt(prod)


def accuracy(counts: ConfusionCounts) -> float:
    if counts.total == 0:
        raise ValueError("accuracy undefined on all-zero counts")
    return (counts.tp + counts.tn) / counts.total


def metrics_report(counts: ConfusionCounts) -> MetricsReport:
    return MetricsReport(
        sn=sensitivity(counts),
        sp=specificity(counts),
        accuracy=accuracy(counts),
        cc=correlation(counts),
    )


def parse_regions(text: str) -> dict[str, list[Region]]:
    """Parse 'record_id<TAB>start<TAB>end' lines (1-based inclusive).

    Records keep first-seen order; blank lines are ignored.
    """
    regions: dict[str, list[Region]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ParseError(f"expected 'record_id<TAB>start<TAB>end', got {raw!r}", lineno)
        rec, start_text, end_text = parts
        if not rec:
            raise ParseError("empty record id", lineno)
        try:
            start, end = int(start_text), int(end_text)
        except ValueError:
            raise ParseError(f"non-integer coordinates in {raw!r}", lineno) from None
        regions.setdefault(rec, []).append((start, end))
    return regions
