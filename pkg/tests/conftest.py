"""Shared fixtures: the bundled 22-row dataset and synthetic sequence sets."""

from __future__ import annotations

from random import Random

import pytest

from itertools import product

from ais_inmaca.fuzzy_ca import LocalRule, RuleId, make_levels
from ais_inmaca.maca_model import LabeledExample, TrainedModel
from ais_inmaca.seq_ingest import load_table
from ais_inmaca.seq_ingest import example_table_text as _example_table_text


def uniform_rules(rule_id: RuleId, size: int, complemented: bool = False):
    return tuple(LocalRule(rule_id=rule_id, complemented=complemented) for _ in range(size))


def inr_model(keys=None, positive: str = "P") -> TrainedModel:
    """Promoter-shaped model on a binary lattice with identity dynamics.

    Every lattice state is its own attractor, so the basin label is read
    straight off the quantized feature key; windows whose initiator-motif
    score quantizes high take the positive label.
    """
    labels = {}
    for key in product(range(2), repeat=4):
        if keys is not None and key not in keys:
            continue
        labels[key] = (positive, 0.9) if key[3] == 1 else ("N", 0.8)
    return TrainedModel(
        levels=make_levels(2),
        size=4,
        rules=uniform_rules(RuleId.IDENTITY, 4),
        basin_labels=labels,
        fallback_label="N",
    )


def rand_seq(rng: Random, length: int) -> str:
    return "".join(rng.choice("ACGT") for _ in range(length))


def coding_like(rng: Random, length: int = 120) -> str:
    """Period-3 base bias: phase 0 favors A, phase 1 favors T, phase 2 G."""
    out = []
    for i in range(length):
        r = rng.random()
        phase = i % 3
        if phase == 0:
            out.append("A" if r < 0.7 else rng.choice("CGT"))
        elif phase == 1:
            out.append("T" if r < 0.7 else rng.choice("ACG"))
        else:
            out.append("G" if r < 0.7 else rng.choice("ACT"))
    return "".join(out)


def promoter_like(rng: Random, length: int = 50) -> str:
    """GC-rich background with boosted CG dinucleotides and a planted TATAAA."""
    out: list[str] = []
    while len(out) < length:
        r = rng.random()
        if r < 0.12:
            out.extend("CG")
        elif r < 0.56:
            out.append(rng.choice("GC"))
        else:
            out.append(rng.choice("AT"))
    seq = out[:length]
    pos = rng.randrange(0, length - 6 + 1)
    seq[pos : pos + 6] = "TATAAA"
    return "".join(seq)


def synthetic_split(task: str, data_seed: int = 0, per_class: int = 500):
    """(train, test) LabeledExample lists: positives 'C', negatives 'N'."""
    from ais_inmaca.feature_extract import coding_features, promoter_features

    rng = Random(data_seed)
    if task == "coding":
        pos = [coding_like(rng) for _ in range(per_class)]
        neg = [rand_seq(rng, 120) for _ in range(per_class)]
        feats = coding_features
    else:
        pos = [promoter_like(rng) for _ in range(per_class)]
        neg = [rand_seq(rng, 50) for _ in range(per_class)]
        feats = promoter_features
    pos_ex = [LabeledExample(features=feats(s).values, label="C") for s in pos]
    neg_ex = [LabeledExample(features=feats(s).values, label="N") for s in neg]
    half = per_class // 2
    train = pos_ex[:half] + neg_ex[:half]
    test = pos_ex[half:] + neg_ex[half:]
    return train, test


@pytest.fixture(scope="session")
def table_text() -> str:
    return _example_table_text()


@pytest.fixture(scope="session")
def table_data(table_text):
    return load_table(table_text)


@pytest.fixture(scope="session")
def levels6():
    return make_levels(6)
