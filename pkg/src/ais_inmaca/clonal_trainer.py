"""Clonal-selection search over rule vectors.

The trainer treats each candidate rule vector as an antibody.  Affinity is
training-set fitness (accuracy or correlation of the induced basin
classifier).  Each generation: rank, select the top group, clone in
proportion to rank, hypermutate clones with a rate inversely related to
rank, re-evaluate, apply receptor editing to the worst tail, and carry the
best individual forward unconditionally.  All randomness flows through a
single seeded random.Random so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from random import Random

from .evaluation import ConfusionCounts, correlation
from .fuzzy_ca import (
    RULE_CATALOG,
    FuzzyLevels,
    RuleVector,
    make_levels,
    rule_tables,
    trace_attractor,
)
from .maca_model import (
    LabeledExample,
    TrainedModel,
    encode,
    fit_basins,
    label_basins,
    majority_label,
)

FITNESS_METRICS = ("accuracy", "cc")


@dataclass(frozen=True)
class TrainerConfig:
    population: int = 50
    generations: int = 50
    select_top: int | None = None
    clone_budget: int | None = None
    editing_fraction: float = 0.1
    fitness_metric: str = "accuracy"
    seed: int = 0
    n: int = 6
    size: int | None = None
    rate_min: float = 0.05
    rate_max: float = 0.5

    def __post_init__(self):
        if self.population < 1:
            raise ValueError("population must be >= 1")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        if self.fitness_metric not in FITNESS_METRICS:
            raise ValueError(f"unknown fitness metric {self.fitness_metric!r}")
        if not 0.0 <= self.editing_fraction < 1.0:
            raise ValueError("editing_fraction must be in [0, 1)")
        if not 0.0 <= self.rate_min <= self.rate_max <= 1.0:
            raise ValueError("need 0 <= rate_min <= rate_max <= 1")
        if self.select_top is not None and not 1 <= self.select_top <= self.population:
            raise ValueError("select_top must be in [1, population]")
        if self.clone_budget is not None and self.clone_budget < self.population:
            # implies clone_budget >= select_top, so every selected
            # individual receives at least one clone
            raise ValueError("clone_budget must be >= population")
        if self.size is not None and self.size < 1:
            raise ValueError("size must be >= 1")

    def resolved_select_top(self) -> int:
        if self.select_top is not None:
            return self.select_top
        return min(10, self.population)

    def resolved_clone_budget(self) -> int:
        if self.clone_budget is not None:
            return self.clone_budget
        return max(50, self.population)

    def resolved_edit_count(self) -> int:
        return int(self.editing_fraction * self.population)


@dataclass(frozen=True)
class TrainerReport:
    best_fitness_per_generation: tuple[float, ...]
    evaluations: int
    final_fitness: float


@dataclass
class _Encoded:
    cells: tuple[int, ...]
    label: str


def _random_rules(rng: Random, size: int) -> RuleVector:
    return tuple(rng.choice(RULE_CATALOG) for _ in range(size))


def _mutate(rules: RuleVector, rate: float, rng: Random) -> RuleVector:
    """Resample each position independently with probability rate."""
    out = list(rules)
    for i in range(len(out)):
        if rng.random() < rate:
            out[i] = rng.choice(RULE_CATALOG)
    return tuple(out)


def _clone_counts(select_top: int, budget: int) -> list[int]:
    """Apportion budget clones by rank weight select_top - i.

    Largest-remainder method: exact quotas are floored, then leftover
    clones go to the largest fractional remainders (rank order breaking
    ties).  Guarantees every selected individual gets >= 1 clone because
    budget >= select_top is enforced by the config.
    """
    weights = [select_top - i for i in range(select_top)]
    total_w = sum(weights)
    quotas = [budget * w / total_w for w in weights]
    counts = [max(1, math.floor(q)) for q in quotas]
    while sum(counts) > budget:
        # overshoot from the max(1, ...) floor on tiny budgets; pull from the tail
        for i in range(select_top - 1, -1, -1):
            if counts[i] > 1 and sum(counts) > budget:
                counts[i] -= 1
        if all(c == 1 for c in counts):
            break
    leftovers = sorted(
        range(select_top),
        key=lambda i: (-(quotas[i] - math.floor(quotas[i])), i),
    )
    idx = 0
    while sum(counts) < budget:
        counts[leftovers[idx % select_top]] += 1
        idx += 1
    return counts


def _score_counts(
    tallies: dict[tuple[int, ...], dict[str, int]],
    priors: dict[str, int],
) -> ConfusionCounts:
    """Two-class confusion from per-basin tallies under majority labels.

    Positive class is the lexicographically first label; the correlation
    metric is invariant under swapping the class roles, so the choice only
    has to be deterministic.
    """
    positive = sorted(priors)[0]
    tp = fp = tn = fn = 0
    for counts in tallies.values():
        best = min(counts.items(), key=lambda kv: (-kv[1], -priors.get(kv[0], 0), kv[0]))[0]
        for lab, c in counts.items():
            if best == positive:
                if lab == positive:
                    tp += c
                else:
                    fp += c
            else:
                if lab == positive:
                    fn += c
                else:
                    tn += c
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


class ClonalTrainer:
    """Runs the clonal-selection loop for one dataset and config."""

    def __init__(self, data: list[LabeledExample], config: TrainerConfig):
        if not data:
            raise ValueError("training data must be non-empty")
        widths = {len(ex.features) for ex in data}
        if len(widths) != 1:
            raise ValueError(f"inconsistent feature widths {sorted(widths)}")
        width = widths.pop()
        if config.size is not None and config.size != width:
            raise ValueError(
                f"config size {config.size} does not match feature width {width}"
            )
        labels = sorted({ex.label for ex in data})
        if config.fitness_metric == "cc" and len(labels) > 2:
            raise ValueError("cc fitness requires at most two classes")
        self.config = config
        self.size = width
        self.levels: FuzzyLevels = make_levels(config.n)
        self.data = data
        self.priors: dict[str, int] = {}
        for ex in data:
            self.priors[ex.label] = self.priors.get(ex.label, 0) + 1
        self._encoded = [
            _Encoded(cells=encode(ex.features, self.levels).cells, label=ex.label)
            for ex in data
        ]
        self._trace_memo: dict = {}
        self.rng = Random(config.seed)
        self.evaluations = 0

    def _affinity(self, rules: RuleVector) -> float:
        """Training fitness of the basin classifier induced by rules."""
        self.evaluations += 1
        tables = rule_tables(rules, self.levels)
        tallies: dict[tuple[int, ...], dict[str, int]] = {}
        memo = self._trace_memo.setdefault(rules, {})
        for ex in self._encoded:
            key = trace_attractor(ex.cells, tables, memo)
            basin = tallies.setdefault(key, {})
            basin[ex.label] = basin.get(ex.label, 0) + 1
        if self.config.fitness_metric == "accuracy":
            # chosen basin label always carries the basin's max count
            correct = sum(max(c.values()) for c in tallies.values())
            return correct / len(self._encoded)
        cc = correlation(_score_counts(tallies, self.priors))
        return 0.0 if cc is None else cc

    def train(self) -> tuple[TrainedModel, TrainerReport]:
        cfg = self.config
        select_top = cfg.resolved_select_top()
        budget = cfg.resolved_clone_budget()
        n_edit = cfg.resolved_edit_count()
        clone_counts = _clone_counts(select_top, budget)

        population = [_random_rules(self.rng, self.size) for _ in range(cfg.population)]
        scored = [(self._affinity(r), r) for r in population]
        scored.sort(key=lambda fr: -fr[0])
        curve = [scored[0][0]]

        for _ in range(cfg.generations):
            elite_fit, elite_rules = scored[0]
            selected = scored[:select_top]
            children: list[tuple[float, RuleVector]] = []
            for i, (_, rules) in enumerate(selected):
                if select_top > 1:
                    rate = cfg.rate_min + (cfg.rate_max - cfg.rate_min) * (i / (select_top - 1))
                else:
                    rate = cfg.rate_min
                for _ in range(clone_counts[i]):
                    child = _mutate(rules, rate, self.rng)
                    children.append((self._affinity(child), child))

            pool = scored + children
            pool.sort(key=lambda fr: -fr[0])
            scored = pool[: cfg.population]

            if n_edit > 0:
                fresh = [
                    (self._affinity(r), r)
                    for r in (_random_rules(self.rng, self.size) for _ in range(n_edit))
                ]
                scored = scored[: cfg.population - n_edit] + fresh
                scored.sort(key=lambda fr: -fr[0])

            if scored[0][0] < elite_fit:
                scored = [(elite_fit, elite_rules)] + scored[:-1]
            curve.append(scored[0][0])

        best_fit, best_rules = scored[0]
        stats = fit_basins(best_rules, self.data, self.levels)
        basin_labels = label_basins(stats, self.priors)
        model = TrainedModel(
            levels=self.levels,
            size=self.size,
            rules=best_rules,
            basin_labels=basin_labels,
            fallback_label=majority_label(self.priors),
            metadata={
                "seed": cfg.seed,
                "fitness": best_fit,
                "generations": cfg.generations,
            },
        )
        report = TrainerReport(
            best_fitness_per_generation=tuple(curve),
            evaluations=self.evaluations,
            final_fitness=best_fit,
        )
        return model, report


def train(data: list[LabeledExample], config: TrainerConfig | None = None) -> tuple[TrainedModel, TrainerReport]:
    return ClonalTrainer(data, config or TrainerConfig()).train()
