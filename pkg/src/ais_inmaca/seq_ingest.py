"""Sequence and dataset input: FASTA parsing, sliding windows, tables."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .errors import ParseError
from .maca_model import LabeledExample, validate_label

ALPHABET = frozenset("ACGTN")

_COMPLEMENT = str.maketrans("ACGTN", "TGCAN")


@dataclass(frozen=True)
class SequenceRecord:
    id: str
    residues: str


@dataclass(frozen=True)
class WindowSpec:
    width: int
    stride: int

    def __post_init__(self):
        if self.width < 1 or self.stride < 1:
            raise ValueError("window width and stride must be >= 1")


@dataclass(frozen=True)
class Window:
    """1-based inclusive start, exclusive end; end - start == width."""

    start: int
    end: int
    subsequence: str


def parse_fasta(text: str) -> list[SequenceRecord]:
    """Parse '>'-headed records; residues uppercased, restricted to ACGTN.

    Illegal characters are reported with the record id and their 1-based
    offset within that record's residues.
    """
    records: list[SequenceRecord] = []
    rec_id: str | None = None
    chunks: list[str] = []
    offset = 0

    def flush():
        if rec_id is not None:
            records.append(SequenceRecord(id=rec_id, residues="".join(chunks)))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            rec_id = line[1:].split()[0] if line[1:].split() else ""
            if not rec_id:
                raise ParseError("header with empty record id", lineno)
            chunks = []
            offset = 0
            continue
        if rec_id is None:
            raise ParseError(f"sequence data before first '>' header: {raw!r}", lineno)
        upper = line.upper()
        for ch in upper:
            offset += 1
            if ch not in ALPHABET:
                raise ParseError(
                    f"record {rec_id!r}: illegal character {ch!r} at offset {offset}", lineno
                )
        chunks.append(upper)
    flush()
    return records


def format_fasta(records: list[SequenceRecord], line_width: int = 60) -> str:
    """Canonical FASTA text; parse_fasta(format_fasta(r)) == r."""
    out = []
    for rec in records:
        out.append(f">{rec.id}")
        for i in range(0, len(rec.residues), line_width):
            out.append(rec.residues[i : i + line_width])
    return "\n".join(out) + "\n" if out else ""


def reverse_complement(seq: str) -> str:
    return seq.translate(_COMPLEMENT)[::-1]


def windows(record: SequenceRecord, spec: WindowSpec) -> list[Window]:
    """Fixed-width windows at starts 1, 1+stride, ...; empty if too short."""
    length = len(record.residues)
    out = []
    for start in range(1, length - spec.width + 2, spec.stride):
        out.append(
            Window(
                start=start,
                end=start + spec.width,
                subsequence=record.residues[start - 1 : start - 1 + spec.width],
            )
        )
    return out


def load_table(text: str) -> list[LabeledExample]:
    """Parse a labeled dataset table.

    Rows are tab- or comma-separated; an optional leading row index of the
    form '12.' is ignored; the last column is the label and every other
    column must be a real in [0, 1].  All rows must have the same width.
    """
    examples: list[LabeledExample] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split("\t") if "\t" in line else line.split(",")
        parts = [p.strip() for p in parts]
        if parts and parts[0].endswith(".") and parts[0][:-1].isdigit():
            parts = parts[1:]
        if len(parts) < 2:
            raise ParseError(f"row needs at least one attribute and a label: {raw!r}", lineno)
        label = parts[-1]
        try:
            validate_label(label)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        values = []
        for col, token in enumerate(parts[:-1], 1):
            try:
                x = float(token)
            except ValueError:
                raise ParseError(f"non-numeric attribute {token!r} in column {col}", lineno) from None
            if not 0.0 <= x <= 1.0:
                raise ParseError(f"attribute {x} in column {col} outside [0, 1]", lineno)
            values.append(x)
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise ParseError(
                f"ragged row: {len(values)} attributes, expected {width}", lineno
            )
        examples.append(LabeledExample(features=tuple(values), label=label))
    return examples


def example_table_text() -> str:
    """The bundled 22-row, 3-attribute sample dataset (12 C, 10 N)."""
    return (resources.files("ais_inmaca") / "data" / "example_dataset.csv").read_text()
