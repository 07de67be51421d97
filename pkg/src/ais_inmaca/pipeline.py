"""Shared orchestration: the train/predict/evaluate/basins/features flows.

Both the HTTP service and the command-line client call into this module, so
every report rendered here is the single source of truth for output bytes.
"""

from __future__ import annotations

import re

from .clonal_trainer import TrainerConfig, TrainerReport, train
from .errors import DimensionMismatch, ParseError
from .evaluation import (
    ConfusionCounts,
    accuracy,
    confusion_from_regions,
    correlation,
    derive,
    parse_regions,
    sensitivity,
    specificity,
)
from .feature_extract import (
    CODING_MIN_LEN,
    CODING_SCHEMA,
    PROMOTER_MIN_LEN,
    PROMOTER_SCHEMA,
    FeatureVector,
    coding_features,
    promoter_features,
)
from .fuzzy_ca import (
    FuzzyLevels,
    LocalRule,
    RuleId,
    RuleVector,
    basin_map,
    make_levels,
    rule_tables,
    trace_attractor,
)
from .maca_model import LabeledExample, TrainedModel, encode
from .region_report import (
    PromoterRow,
    RegionCall,
    gene_table,
    merge_windows,
    promoter_table,
)
from .seq_ingest import (
    SequenceRecord,
    Window,
    WindowSpec,
    load_table,
    reverse_complement,
    windows,
)

TASKS = ("coding", "promoter")
FORMATS = ("exon-table", "promoter-table", "raw")

TASK_WINDOW = {"coding": 120, "promoter": 50}
TASK_STRIDE = {"coding": 10, "promoter": 10}
TASK_FORMAT = {"coding": "exon-table", "promoter": "promoter-table"}
TASK_SCHEMA = {"coding": CODING_SCHEMA, "promoter": PROMOTER_SCHEMA}
TASK_MIN_LEN = {"coding": CODING_MIN_LEN, "promoter": PROMOTER_MIN_LEN}

DEFAULT_THRESHOLD = 0.5
DEFAULT_MAX_GAP = 0

_RULE_ITEM = re.compile(r"^([A-Z0-9_]+)(~)?(?:\*(\d+))?$")


def check_task(task: str) -> str:
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r} (expected one of {', '.join(TASKS)})")
    return task


def task_features(seq: str, task: str) -> FeatureVector:
    check_task(task)
    if task == "coding":
        return coding_features(seq)
    return promoter_features(seq)


def resolve_window_spec(task: str, window: int | None, stride: int | None) -> WindowSpec:
    check_task(task)
    width = TASK_WINDOW[task] if window is None else window
    stride_ = TASK_STRIDE[task] if stride is None else stride
    spec = WindowSpec(width=width, stride=stride_)
    if spec.width < TASK_MIN_LEN[task]:
        raise ValueError(
            f"window width {spec.width} below the {task} feature minimum {TASK_MIN_LEN[task]}"
        )
    return spec


def parse_rules_spec(text: str, size: int | None = None) -> RuleVector:
    """Parse the --rules grammar: comma-separated RULEID / RULEID~ / RULEID*K.

    The optional *K repeat makes uniform vectors ("IDENTITY*3") terse; items
    concatenate left to right into the per-cell rule vector.
    """
    out: list[LocalRule] = []
    for item in text.split(","):
        item = item.strip()
        m = _RULE_ITEM.match(item)
        if m is None:
            raise ParseError(f"malformed rule item {item!r}")
        name, tilde, repeat = m.groups()
        try:
            rid = RuleId(name)
        except ValueError:
            raise ParseError(f"unknown rule token {name!r}") from None
        rule = LocalRule(rule_id=rid, complemented=tilde == "~")
        out.extend([rule] * (int(repeat) if repeat else 1))
    if not out:
        raise ParseError("empty rules specification")
    if size is not None and len(out) != size:
        raise ValueError(f"rules specification has {len(out)} cells, size says {size}")
    return tuple(out)


def train_from_table(table_text: str, config: TrainerConfig) -> tuple[TrainedModel, TrainerReport]:
    data = load_table(table_text)
    if not data:
        raise ParseError("dataset table contains no rows")
    return train(data, config)


def _check_model_schema(model: TrainedModel, task: str) -> None:
    width = len(TASK_SCHEMA[task])
    if model.size != width:
        raise DimensionMismatch(
            f"model size {model.size} does not match the {task} schema length {width}"
        )


def _scan_record(
    model: TrainedModel,
    record: SequenceRecord,
    task: str,
    spec: WindowSpec,
    tables: list,
    memo: dict,
) -> list[tuple[Window, str, float]]:
    """Classify every window of one record: (window, label, confidence)."""
    out = []
    for w in windows(record, spec):
        feats = task_features(w.subsequence, task)
        key = trace_attractor(encode(feats.values, model.levels).cells, tables, memo)
        hit = model.basin_labels.get(key)
        if hit is None:
            out.append((w, model.fallback_label, 0.0))
        else:
            out.append((w, hit[0], hit[1]))
    return out


def _strand_regions(
    scan: list[tuple[Window, str, float]],
    threshold: float,
    max_gap: int,
    positive_label: str,
) -> list[RegionCall]:
    calls = [(w, conf) for w, label, conf in scan if label == positive_label]
    return merge_windows(calls, threshold=threshold, max_gap=max_gap, label=positive_label)


def _map_to_forward(regions: list[RegionCall], seq_len: int) -> list[RegionCall]:
    """Reverse-strand region coordinates back onto the forward sequence."""
    mapped = [
        RegionCall(
            start=seq_len - r.end + 1,
            end=seq_len - r.start + 1,
            score=r.score,
            label=r.label,
        )
        for r in regions
    ]
    mapped.sort(key=lambda r: (r.start, r.end))
    return mapped


def predict_report(
    model: TrainedModel,
    records: list[SequenceRecord],
    task: str,
    window: int | None = None,
    stride: int | None = None,
    threshold: float = DEFAULT_THRESHOLD,
    fmt: str | None = None,
    both_strands: bool = False,
    positive_label: str = "C",
    max_gap: int = DEFAULT_MAX_GAP,
) -> str:
    """Window scan -> classify -> merge -> render one report text."""
    check_task(task)
    if fmt is None:
        fmt = TASK_FORMAT[task]
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r} (expected one of {', '.join(FORMATS)})")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    if max_gap < 0:
        raise ValueError("max_gap must be >= 0")
    if both_strands and fmt != "exon-table":
        raise ValueError("both-strand scanning is only supported with the exon-table format")
    _check_model_schema(model, task)
    spec = resolve_window_spec(task, window, stride)

    tables = rule_tables(model.rules, model.levels)
    memo: dict = {}

    if fmt == "raw":
        lines = []
        for record in records:
            for w, label, conf in _scan_record(model, record, task, spec, tables, memo):
                lines.append(f"{record.id}\t{w.start}\t{w.end}\t{label}\t{conf:.6f}")
        return "\n".join(lines) + "\n" if lines else ""

    if fmt == "promoter-table":
        out_lines: list[str] = []
        for record in records:
            rows = [
                PromoterRow(start=w.start, end=w.end, score=conf, sequence=w.subsequence)
                for w, label, conf in _scan_record(model, record, task, spec, tables, memo)
                if label == positive_label and conf >= threshold
            ]
            table = promoter_table(rows).splitlines()
            if not out_lines:
                out_lines.extend(table)
            else:
                out_lines.extend(table[1:])  # keep a single header
        return "\n".join(out_lines) + "\n"

    genes: list[tuple[str, list[RegionCall]]] = []
    for record in records:
        scan = _scan_record(model, record, task, spec, tables, memo)
        forward = _strand_regions(scan, threshold, max_gap, positive_label)
        if forward:
            genes.append(("+", forward))
        if both_strands:
            rc = SequenceRecord(id=record.id, residues=reverse_complement(record.residues))
            rc_scan = _scan_record(model, rc, task, spec, tables, memo)
            reverse = _strand_regions(rc_scan, threshold, max_gap, positive_label)
            if reverse:
                genes.append(("-", _map_to_forward(reverse, len(record.residues))))
    return gene_table(genes)


def feature_dump(
    records: list[SequenceRecord],
    task: str,
    window: int | None = None,
    stride: int | None = None,
) -> str:
    """Tab-separated window features: id, start, end, then the schema order."""
    check_task(task)
    spec = resolve_window_spec(task, window, stride)
    schema = TASK_SCHEMA[task]
    lines = ["id\tstart\tend\t" + "\t".join(schema)]
    for record in records:
        for w in windows(record, spec):
            feats = task_features(w.subsequence, task)
            values = "\t".join(f"{v:.6f}" for v in feats.values)
            lines.append(f"{record.id}\t{w.start}\t{w.end}\t{values}")
    return "\n".join(lines) + "\n"


def _metric_cell(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.6f}"


def metrics_lines(counts: ConfusionCounts) -> str:
    """The name<TAB>value metric listing shared by CLI and service."""
    d = derive(counts)
    lines = [
        f"tp\t{counts.tp}",
        f"fp\t{counts.fp}",
        f"tn\t{counts.tn}",
        f"fn\t{counts.fn}",
        f"ap\t{d.ap}",
        f"an\t{d.an}",
        f"pp\t{d.pp}",
        f"pn\t{d.pn}",
        f"sn\t{_metric_cell(sensitivity(counts))}",
        f"sp\t{_metric_cell(specificity(counts))}",
        f"accuracy\t{_metric_cell(accuracy(counts))}",
        f"cc\t{_metric_cell(correlation(counts))}",
    ]
    return "\n".join(lines) + "\n"


def evaluate_report(pred_text: str, truth_text: str, seq_len: int) -> str:
    """Sum per-record confusion over the union of record ids, then render."""
    pred = parse_regions(pred_text)
    truth = parse_regions(truth_text)
    ids = list(pred)
    ids.extend(rid for rid in truth if rid not in pred)
    if not ids:
        raise ValueError("no records found in prediction or truth files")
    total = ConfusionCounts(tp=0, fp=0, tn=0, fn=0)
    for rid in ids:
        total = total + confusion_from_regions(pred.get(rid, []), truth.get(rid, []), seq_len)
    return metrics_lines(total)


def basins_report(rules: RuleVector, n: int) -> str:
    """Exhaustive basin listing: attractor key and basin size per line."""
    levels: FuzzyLevels = make_levels(n)
    basins = basin_map(levels, len(rules), rules)
    lines = ["Attractor\tSize"]
    for key in sorted(basins):
        lines.append(f"{','.join(str(i) for i in key)}\t{len(basins[key])}")
    return "\n".join(lines) + "\n"
