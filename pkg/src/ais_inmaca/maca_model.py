"""Multiple-attractor CA classifier: basin labelling, prediction, persistence.

A trained model is a rule vector plus a vote-derived attractor -> label map.
Feature vectors in [0,1]^size are quantized onto the lattice, run into their
attractor, and take the basin's majority label; attractors never seen in
training fall back to the global majority label with confidence 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatch, ParseError, VersionError
from .fuzzy_ca import (
    FuzzyLattice,
    FuzzyLevels,
    LocalRule,
    RuleId,
    RuleVector,
    make_levels,
    quantize,
    rule_tables,
    trace_attractor,
)

MODEL_MAGIC = "AIS-INMACA-MODEL"
MODEL_VERSION = "v1"

AttractorKey = tuple[int, ...]


def validate_label(symbol: str) -> str:
    if not symbol or any(ch.isspace() for ch in symbol):
        raise ValueError(f"label must be a non-empty token without whitespace, got {symbol!r}")
    return symbol


@dataclass(frozen=True)
class LabeledExample:
    """One dataset row: attribute values in [0,1] plus a category token."""

    features: tuple[float, ...]
    label: str

    def __post_init__(self):
        validate_label(self.label)
        for i, x in enumerate(self.features):
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"feature {i + 1} value {x} outside [0, 1]")


@dataclass
class BasinStats:
    """Label tally of the training examples draining into one attractor."""

    attractor_key: AttractorKey
    counts: dict[str, int]

    @property
    def purity(self) -> float:
        total = sum(self.counts.values())
        return max(self.counts.values()) / total


@dataclass(frozen=True)
class TrainedModel:
    """Immutable classifier; metadata is informational and never persisted."""

    levels: FuzzyLevels
    size: int
    rules: RuleVector
    basin_labels: dict[AttractorKey, tuple[str, float]]
    fallback_label: str
    metadata: dict = field(compare=False, default_factory=dict)


def encode(features, levels: FuzzyLevels) -> FuzzyLattice:
    """Element-wise quantization of a feature vector onto the lattice."""
    return FuzzyLattice(levels=levels, cells=tuple(quantize(x, levels) for x in features))


def fit_basins(rules: RuleVector, data: list[LabeledExample], levels: FuzzyLevels) -> dict[AttractorKey, BasinStats]:
    """Encode and evolve every example; tally labels per attractor."""
    if not data:
        raise ValueError("cannot fit basins on an empty dataset")
    size = len(data[0].features)
    tables = rule_tables(rules, levels)
    memo: dict = {}
    stats: dict[AttractorKey, BasinStats] = {}
    for ex in data:
        if len(ex.features) != size:
            raise ValueError(
                f"inconsistent feature width: expected {size}, got {len(ex.features)}"
            )
        key = trace_attractor(encode(ex.features, levels).cells, tables, memo)
        entry = stats.get(key)
        if entry is None:
            entry = BasinStats(attractor_key=key, counts={})
            stats[key] = entry
        entry.counts[ex.label] = entry.counts.get(ex.label, 0) + 1
    return stats


def label_basins(
    stats: dict[AttractorKey, BasinStats],
    priors: dict[str, int] | None = None,
) -> dict[AttractorKey, tuple[str, float]]:
    """Majority label per basin, at the model file's 6-decimal precision.

    Ties go to the label with the higher global training prior, then to the
    lexicographically smaller label.  Purity is rounded to 6 decimals (the
    precision the model file stores) so fitted models round-trip exactly.
    """
    if not stats:
        raise ValueError("no basins to label")
    if priors is None:
        priors = {}
        for entry in stats.values():
            for label, c in entry.counts.items():
                priors[label] = priors.get(label, 0) + c
    labelled = {}
    for key, entry in stats.items():
        best = min(
            entry.counts.items(),
            key=lambda kv: (-kv[1], -priors.get(kv[0], 0), kv[0]),
        )[0]
        labelled[key] = (best, round(entry.purity, 6))
    return labelled


def majority_label(priors: dict[str, int]) -> str:
    """Highest-count label; ties resolve lexicographically."""
    if not priors:
        raise ValueError("empty label tally")
    return min(priors.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def classify(model: TrainedModel, features) -> tuple[str, float]:
    """Predict (label, confidence) for one feature vector.

    Confidence is the training purity of the attractor's basin; an attractor
    never reached during training yields (fallback_label, 0.0).
    """
    if len(features) != model.size:
        raise DimensionMismatch(
            f"feature vector has {len(features)} components, model expects {model.size}"
        )
    lat = encode(features, model.levels)
    key = trace_attractor(lat.cells, rule_tables(model.rules, model.levels))
    hit = model.basin_labels.get(key)
    if hit is None:
        return model.fallback_label, 0.0
    return hit


def _rule_to_field(rule: LocalRule) -> str:
    return f"{rule.rule_id.value}:{'C' if rule.complemented else 'N'}"


def _rule_from_field(text: str, line: int) -> LocalRule:
    name, sep, flag = text.partition(":")
    if not sep or flag not in ("N", "C"):
        raise ParseError(f"malformed rule entry {text!r} (expected ID:N or ID:C)", line)
    try:
        rid = RuleId(name)
    except ValueError:
        raise ParseError(f"unknown rule token {name!r}", line) from None
    return LocalRule(rule_id=rid, complemented=(flag == "C"))


def serialize(model: TrainedModel) -> str:
    """Render the diff-friendly v1 model text (UTF-8, LF, sorted basins)."""
    lines = [
        f"{MODEL_MAGIC} {MODEL_VERSION}",
        f"n={model.levels.n}",
        f"size={model.size}",
        "boundary=null",
        f"fallback={model.fallback_label}",
        "rules=" + ",".join(_rule_to_field(r) for r in model.rules),
    ]
    for key in sorted(model.basin_labels):
        label, purity = model.basin_labels[key]
        lines.append(f"{','.join(str(i) for i in key)}\t{label}\t{purity:.6f}")
    return "\n".join(lines) + "\n"


def _header_value(lines: list[str], lineno: int, field_name: str) -> str:
    if lineno > len(lines):
        raise ParseError(f"missing header field {field_name!r}", lineno)
    text = lines[lineno - 1]
    name, sep, value = text.partition("=")
    if not sep or name != field_name:
        raise ParseError(f"expected {field_name}=..., got {text!r}", lineno)
    return value


def deserialize(text: str) -> TrainedModel:
    """Parse a v1 model file; errors carry the offending line number."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty model text", 1)
    magic, _, version = lines[0].partition(" ")
    if magic != MODEL_MAGIC:
        raise ParseError(f"not a model file (bad magic {lines[0]!r})", 1)
    if version != MODEL_VERSION:
        raise VersionError(f"unsupported model version {version!r}", 1)

    try:
        n = int(_header_value(lines, 2, "n"))
        size = int(_header_value(lines, 3, "size"))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"non-integer header value: {exc}", 2) from None
    boundary = _header_value(lines, 4, "boundary")
    if boundary != "null":
        raise ParseError(f"unsupported boundary policy {boundary!r}", 4)
    fallback = _header_value(lines, 5, "fallback")
    try:
        validate_label(fallback)
    except ValueError as exc:
        raise ParseError(str(exc), 5) from None
    rules_text = _header_value(lines, 6, "rules")
    rules = tuple(_rule_from_field(tok, 6) for tok in rules_text.split(",") if tok != "")
    if len(rules) != size:
        raise ParseError(f"rules list has {len(rules)} entries, size says {size}", 6)
    try:
        levels = make_levels(n)
    except ValueError as exc:
        raise ParseError(str(exc), 2) from None

    basin_labels: dict[AttractorKey, tuple[str, float]] = {}
    for lineno in range(7, len(lines) + 1):
        raw = lines[lineno - 1]
        if raw == "":
            continue
        parts = raw.split("\t")
        if len(parts) != 3:
            raise ParseError(f"expected 'key<TAB>label<TAB>purity', got {raw!r}", lineno)
        key_text, label, purity_text = parts
        try:
            key = tuple(int(tok) for tok in key_text.split(","))
        except ValueError:
            raise ParseError(f"malformed attractor key {key_text!r}", lineno) from None
        if len(key) != size or any(not 0 <= i < n for i in key):
            raise ParseError(f"attractor key {key_text!r} incompatible with n={n}, size={size}", lineno)
        try:
            validate_label(label)
            purity = float(purity_text)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if not 0.0 < purity <= 1.0:
            raise ParseError(f"purity {purity_text} outside (0, 1]", lineno)
        if key in basin_labels:
            raise ParseError(f"duplicate basin key {key_text!r}", lineno)
        basin_labels[key] = (label, purity)
    if not basin_labels:
        raise ParseError("model has no basin lines", len(lines))

    return TrainedModel(
        levels=levels,
        size=size,
        rules=rules,
        basin_labels=basin_labels,
        fallback_label=fallback,
    )
