"""Clonal-selection trainer: apportionment, affinity, and the search loop."""

from random import Random

import pytest

from ais_inmaca.clonal_trainer import (
    ClonalTrainer,
    TrainerConfig,
    TrainerReport,
    _clone_counts,
    _mutate,
    _random_rules,
    _score_counts,
    train,
)
from ais_inmaca.evaluation import ConfusionCounts
from ais_inmaca.fuzzy_ca import RULE_CATALOG, RuleId
from ais_inmaca.maca_model import LabeledExample, TrainedModel, classify, serialize

from conftest import uniform_rules

SEPARABLE = [
    LabeledExample(features=(0.0,), label="A"),
    LabeledExample(features=(1.0,), label="B"),
]


class TestTrainerConfig:
    @pytest.mark.parametrize(
        "kwargs,message",
        [
            (dict(population=0), "population must be >= 1"),
            (dict(generations=-1), "generations must be >= 0"),
            (dict(fitness_metric="f1"), "unknown fitness metric 'f1'"),
            (dict(editing_fraction=1.0), r"editing_fraction must be in \[0, 1\)"),
            (dict(editing_fraction=-0.1), r"editing_fraction must be in \[0, 1\)"),
            (dict(rate_min=0.6, rate_max=0.5), "rate_min <= rate_max"),
            (dict(rate_max=1.5), "rate_min <= rate_max"),
            (dict(select_top=0), r"select_top must be in \[1, population\]"),
            (dict(population=5, select_top=6), r"select_top must be in \[1, population\]"),
            (dict(population=20, clone_budget=19), "clone_budget must be >= population"),
            (dict(size=0), "size must be >= 1"),
        ],
    )
    def test_rejects(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            TrainerConfig(**kwargs)

    def test_resolved_select_top(self):
        assert TrainerConfig(population=5).resolved_select_top() == 5
        assert TrainerConfig(population=50).resolved_select_top() == 10
        assert TrainerConfig(population=50, select_top=3).resolved_select_top() == 3

    def test_resolved_clone_budget(self):
        assert TrainerConfig(population=20).resolved_clone_budget() == 50
        assert TrainerConfig(population=80).resolved_clone_budget() == 80
        assert TrainerConfig(population=20, clone_budget=33).resolved_clone_budget() == 33

    def test_resolved_edit_count(self):
        assert TrainerConfig(population=20, editing_fraction=0.1).resolved_edit_count() == 2
        assert TrainerConfig(population=7, editing_fraction=0.1).resolved_edit_count() == 0
        assert TrainerConfig(population=10, editing_fraction=0.0).resolved_edit_count() == 0


class TestCloneCounts:
    @pytest.mark.parametrize(
        "select_top,budget",
        [(1, 1), (1, 7), (2, 2), (3, 10), (5, 50), (10, 50), (7, 23), (10, 10)],
    )
    def test_apportionment(self, select_top, budget):
        counts = _clone_counts(select_top, budget)
        assert len(counts) == select_top
        assert sum(counts) == budget
        assert all(c >= 1 for c in counts)
        assert counts[0] == max(counts)

    def test_proportional_to_rank(self):
        counts = _clone_counts(4, 100)
        # weights 4:3:2:1 over 100
        assert counts == [40, 30, 20, 10]


class TestMutate:
    def test_rate_zero_is_identity(self):
        rules = _random_rules(Random(1), 12)
        assert _mutate(rules, 0.0, Random(2)) == rules

    def test_rate_one_resamples_most_positions(self):
        rng = Random(3)
        rules = tuple(RULE_CATALOG[0] for _ in range(200))
        mutated = _mutate(rules, 1.0, rng)
        changed = sum(1 for a, b in zip(rules, mutated) if a != b)
        # each position redraws uniformly from 18 combos
        assert changed > 150

    def test_reproducible(self):
        rules = _random_rules(Random(5), 9)
        assert _mutate(rules, 0.4, Random(7)) == _mutate(rules, 0.4, Random(7))

    def test_outputs_stay_in_catalog(self):
        rng = Random(11)
        rules = _random_rules(rng, 30)
        for rule in _mutate(rules, 0.8, rng):
            assert rule in RULE_CATALOG


class TestScoreCounts:
    def test_majority_split(self):
        tallies = {(0,): {"C": 3, "N": 1}, (1,): {"N": 4}}
        got = _score_counts(tallies, {"C": 3, "N": 5})
        assert got == ConfusionCounts(tp=3, fp=1, tn=4, fn=0)

    def test_count_tie_breaks_by_prior(self):
        tallies = {(0,): {"C": 2, "N": 2}}
        got = _score_counts(tallies, {"C": 2, "N": 5})
        # N wins the basin, so both C examples become false negatives
        assert got == ConfusionCounts(tp=0, fp=0, tn=2, fn=2)


class TestAffinity:
    def test_sink_rules_give_majority_accuracy(self, table_data):
        trainer = ClonalTrainer(table_data, TrainerConfig(population=1, generations=0))
        fit = trainer._affinity(uniform_rules(RuleId.ZERO, 3))
        assert fit == pytest.approx(12 / 22)

    def test_sink_rules_give_zero_cc(self, table_data):
        cfg = TrainerConfig(population=1, generations=0, fitness_metric="cc")
        trainer = ClonalTrainer(table_data, cfg)
        # a single basin leaves one class column empty: undefined -> 0.0
        assert trainer._affinity(uniform_rules(RuleId.ZERO, 3)) == 0.0

    def test_identity_rules_on_separable_data(self):
        trainer = ClonalTrainer(SEPARABLE, TrainerConfig(population=1, generations=0, n=2))
        assert trainer._affinity(uniform_rules(RuleId.IDENTITY, 1)) == 1.0

    def test_each_call_counts_one_evaluation(self, table_data):
        trainer = ClonalTrainer(table_data, TrainerConfig(population=1, generations=0))
        base = trainer.evaluations
        rules = uniform_rules(RuleId.MAJ3, 3)
        trainer._affinity(rules)
        trainer._affinity(rules)
        assert trainer.evaluations == base + 2


class TestTrainerValidation:
    def test_empty_data(self):
        with pytest.raises(ValueError, match="non-empty"):
            ClonalTrainer([], TrainerConfig())

    def test_inconsistent_widths(self):
        data = [
            LabeledExample(features=(0.1,), label="C"),
            LabeledExample(features=(0.1, 0.2), label="N"),
        ]
        with pytest.raises(ValueError, match=r"inconsistent feature widths \[1, 2\]"):
            ClonalTrainer(data, TrainerConfig())

    def test_size_mismatch_names_both(self, table_data):
        with pytest.raises(ValueError, match="config size 5 does not match feature width 3"):
            ClonalTrainer(table_data, TrainerConfig(size=5))

    def test_cc_rejects_three_classes(self):
        data = [
            LabeledExample(features=(0.0,), label="A"),
            LabeledExample(features=(0.5,), label="B"),
            LabeledExample(features=(1.0,), label="C"),
        ]
        with pytest.raises(ValueError, match="at most two classes"):
            ClonalTrainer(data, TrainerConfig(fitness_metric="cc"))


class TestTrain:
    def test_separable_data_reaches_perfect_fitness(self):
        cfg = TrainerConfig(population=8, generations=5, clone_budget=8, n=2, seed=0)
        model, report = train(SEPARABLE, cfg)
        assert report.final_fitness == 1.0
        assert classify(model, (0.0,))[0] == "A"
        assert classify(model, (1.0,))[0] == "B"

    def test_returns_model_and_report(self, table_data):
        cfg = TrainerConfig(population=6, generations=2, clone_budget=6, seed=1)
        model, report = train(table_data, cfg)
        assert isinstance(model, TrainedModel)
        assert isinstance(report, TrainerReport)
        assert model.size == 3
        assert len(model.rules) == 3
        assert model.basin_labels

    def test_curve_length_and_final(self, table_data):
        cfg = TrainerConfig(population=5, generations=4, clone_budget=5, seed=2)
        _, report = train(table_data, cfg)
        assert len(report.best_fitness_per_generation) == 5
        assert report.final_fitness == report.best_fitness_per_generation[-1]

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_elitism_makes_curve_non_decreasing(self, table_data, seed):
        cfg = TrainerConfig(population=6, generations=6, clone_budget=8, seed=seed)
        _, report = train(table_data, cfg)
        curve = report.best_fitness_per_generation
        assert all(a <= b for a, b in zip(curve, curve[1:]))

    @pytest.mark.parametrize(
        "population,generations,clone_budget,editing_fraction",
        [(10, 3, 12, 0.2), (5, 0, 5, 0.1), (4, 2, 9, 0.0), (6, 4, 6, 0.5)],
    )
    def test_evaluation_budget_exact(
        self, table_data, population, generations, clone_budget, editing_fraction
    ):
        cfg = TrainerConfig(
            population=population,
            generations=generations,
            clone_budget=clone_budget,
            editing_fraction=editing_fraction,
            seed=3,
        )
        _, report = train(table_data, cfg)
        n_edit = cfg.resolved_edit_count()
        assert report.evaluations == population + generations * (clone_budget + n_edit)

    def test_same_seed_reproduces_model_bytes(self, table_data):
        cfg = TrainerConfig(population=6, generations=3, clone_budget=6, seed=9)
        model_a, report_a = train(table_data, cfg)
        model_b, report_b = train(table_data, cfg)
        assert serialize(model_a) == serialize(model_b)
        assert report_a == report_b

    def test_zero_generations_single_candidate(self, table_data):
        cfg = TrainerConfig(population=1, generations=0, seed=4)
        model, report = train(table_data, cfg)
        assert report.evaluations == 1
        assert report.best_fitness_per_generation == (report.final_fitness,)
        assert len(model.rules) == 3

    def test_metadata_reflects_run(self, table_data):
        cfg = TrainerConfig(population=5, generations=2, clone_budget=5, seed=6)
        model, report = train(table_data, cfg)
        assert model.metadata == {
            "seed": 6,
            "fitness": report.final_fitness,
            "generations": 2,
        }

    def test_cc_metric_runs(self, table_data):
        cfg = TrainerConfig(
            population=5, generations=2, clone_budget=5, fitness_metric="cc", seed=7
        )
        _, report = train(table_data, cfg)
        assert -1.0 <= report.final_fitness <= 1.0
