"""Window calls -> merged regions -> rendered report tables.

Two tab-separated report formats are produced: an exon-style gene table
(1-based inclusive Left/Right ends) and a promoter window table (inclusive
start, exclusive end, 2-decimal score).  Header strings are part of the
output contract and must not drift.
"""

from __future__ import annotations

from dataclasses import dataclass

from .seq_ingest import Window

GENE_TABLE_HEADER = "Gene number\tElement number\tExons/UTR\tStrand\tLeft end\tRight end"
PROMOTER_TABLE_HEADER = "Start\tEnd\tScore\tPromoter Sequence"

ELEMENT_KINDS = ("Utr5", "Initial", "Internal", "Terminal", "Single")


@dataclass(frozen=True)
class RegionCall:
    """Merged positive region, 1-based inclusive on both ends."""

    start: int
    end: int
    score: float
    label: str

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"region ({self.start}, {self.end}) is inverted")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [0, 1]")


@dataclass(frozen=True)
class GeneElementRow:
    gene_number: int
    element_number: int
    kind: str
    strand: str
    left: int
    right: int

    def __post_init__(self):
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if self.strand not in ("+", "-"):
            raise ValueError(f"strand must be '+' or '-', got {self.strand!r}")
        if self.left > self.right:
            raise ValueError("left end must not exceed right end")


@dataclass(frozen=True)
class PromoterRow:
    """Promoter window row: inclusive start, exclusive end (= start+width)."""

    start: int
    end: int
    score: float
    sequence: str

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [0, 1]")
        if self.end - self.start != len(self.sequence):
            raise ValueError("sequence length must equal end - start")


def merge_windows(
    calls: list[tuple[Window, float]],
    threshold: float,
    max_gap: int,
    label: str = "C",
) -> list[RegionCall]:
    """Merge scoring windows into inclusive regions.

    Windows below threshold are dropped; survivors merge while the gap
    between one region's inclusive end and the next window's start is at
    most max_gap positions.  A region's score is the max over its members.
    """
    last_start = None
    for w, _ in calls:
        if last_start is not None and w.start < last_start:
            raise ValueError("window calls must be sorted by start")
        last_start = w.start

    merged: list[RegionCall] = []
    cur: list[int | float] | None = None  # [start, end_inclusive, score]
    for w, score in calls:
        if score < threshold:
            continue
        w_end = w.end - 1  # exclusive -> inclusive
        if cur is not None and w.start - cur[1] - 1 <= max_gap:
            cur[1] = max(cur[1], w_end)
            cur[2] = max(cur[2], score)
        else:
            if cur is not None:
                merged.append(RegionCall(start=cur[0], end=cur[1], score=cur[2], label=label))
            cur = [w.start, w_end, score]
    if cur is not None:
        merged.append(RegionCall(start=cur[0], end=cur[1], score=cur[2], label=label))
    return merged


def _element_kind(index: int, count: int) -> str:
    if count == 1:
        return "Single"
    if index == 0:
        return "Initial"
    if index == count - 1:
        return "Terminal"
    return "Internal"


def gene_element_rows(genes: list[tuple[str, list[RegionCall]]]) -> list[GeneElementRow]:
    """One gene per (strand, regions) group; element kinds by position."""
    rows: list[GeneElementRow] = []
    gene_number = 0
    for strand, regions in genes:
        if not regions:
            continue
        gene_number += 1
        for i, region in enumerate(regions):
            rows.append(
                GeneElementRow(
                    gene_number=gene_number,
                    element_number=i,
                    kind=_element_kind(i, len(regions)),
                    strand=strand,
                    left=region.start,
                    right=region.end,
                )
            )
    return rows


def gene_table(genes: list[tuple[str, list[RegionCall]]]) -> str:
    lines = [GENE_TABLE_HEADER]
    for row in gene_element_rows(genes):
        lines.append(
            f"{row.gene_number}\t{row.element_number}\t{row.kind}\t"
            f"{row.strand}\t{row.left}\t{row.right}"
        )
    return "\n".join(lines) + "\n"


def promoter_table(rows: list[PromoterRow]) -> str:
    """Render promoter rows; scores formatted to exactly 2 decimals."""
    last_start = None
    for row in rows:
        if last_start is not None and row.start < last_start:
            raise ValueError("promoter rows must be sorted by start")
        last_start = row.start
    lines = [PROMOTER_TABLE_HEADER]
    for row in rows:
        lines.append(f"{row.start}\t{row.end}\t{row.score:.2f}\t{row.sequence}")
    return "\n".join(lines) + "\n"
