# -*- coding: utf-8 -*-
"""Tests for evaluation.py."""

# Standard Library
import json
import math
import tempfile
from fractions import Fraction
from pathlib import Path
from unittest import TestCase

# 3rd-party
import numpy as np

# Project
from common.exceptions import InputDomainError
from common.exceptions import MissingArtifactError
from dcamil.checkpoints import save_checkpoint
from dcamil.networks import DcamilNet
from train_eval.evaluation import MetricsReport
from train_eval.evaluation import evaluate
from train_eval.evaluation import evaluate_checkpoint
from train_eval.evaluation import head_accuracies
from train_eval.evaluation import read_roc_csv
from train_eval.evaluation import roc_auc
from train_eval.evaluation import write_metrics
from train_eval.tests.utils import TrainConfigFactory
from train_eval.tests.utils import toy_bags
from train_eval.training import StrategyFlags


def pairwise_auc(scores, labels):
    """P(s+ > s-) + P(s+ = s-) / 2 by enumerating every pair."""
    positives = [s for s, y in zip(scores, labels) if y == 1]
    negatives = [s for s, y in zip(scores, labels) if y == 0]
    wins = Fraction(0)
    for p in positives:
        for n in negatives:
            if p > n:
                wins += 1
            elif p == n:
                wins += Fraction(1, 2)
    return wins / (len(positives) * len(negatives))


class TestRocAuc(TestCase):
    """Tests for roc_auc."""

    def test_matches_pairwise_oracle(self):
        """Random scores with heavy ties give exactly the pairwise AUC."""
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(2, 30))
            labels = rng.integers(0, 2, size=n)
            labels[0], labels[1] = 0, 1
            scores = rng.integers(0, 6, size=n) / 5.0
            _, auc = roc_auc(scores, labels)
            assert auc == float(pairwise_auc(scores.tolist(), labels.tolist()))

    def test_worked_example(self):
        """Two positives and two negatives with one crossing pair."""
        _, auc = roc_auc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1])
        assert auc == 0.75

    def test_separated_and_reversed(self):
        """Perfect order gives 1, reversed order 0."""
        assert roc_auc([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0])[1] == 1.0
        assert roc_auc([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0])[1] == 0.0

    def test_constant_scores_give_half(self):
        """All ties."""
        assert roc_auc([0.5] * 6, [0, 1, 0, 1, 1, 0])[1] == 0.5

    def test_curve_runs_from_origin_to_corner(self):
        """Starts at (0, 0) with an infinite threshold and ends at (1, 1)."""
        points, _ = roc_auc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1])
        assert (points[0].fpr, points[0].tpr) == (0.0, 0.0)
        assert math.isinf(points[0].threshold)
        assert (points[-1].fpr, points[-1].tpr) == (1.0, 1.0)
        fprs = [p.fpr for p in points]
        tprs = [p.tpr for p in points]
        assert fprs == sorted(fprs)
        assert tprs == sorted(tprs)

    def test_single_class_rejected(self):
        """AUC needs both classes."""
        with self.assertRaises(InputDomainError):
            roc_auc([0.2, 0.7], [1, 1])

    def test_invalid_inputs_rejected(self):
        """Empty, mismatched and non-binary inputs."""
        for scores, labels in (([], []), ([0.1, 0.2], [0]), ([0.1, 0.2], [0, 2])):
            with self.assertRaises(InputDomainError):
                roc_auc(scores, labels)
        with self.assertRaises(InputDomainError):
            roc_auc([0.1, float("nan")], [0, 1])


class TestMetricsReport(TestCase):
    """Tests for MetricsReport."""

    def test_perfect_classifier(self):
        """Every metric is one."""
        report = MetricsReport.from_scores([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0])
        assert (report.tp, report.fp, report.tn, report.fn) == (2, 0, 2, 0)
        assert report.accuracy == 1.0
        assert report.precision == 1.0
        assert report.recall == 1.0
        assert report.f1 == 1.0
        assert report.auc == 1.0

    def test_everything_called_positive(self):
        """Half the bags positive and all predicted positive."""
        report = MetricsReport.from_scores([0.6, 0.7, 0.8, 0.9], [0, 1, 0, 1])
        assert report.accuracy == 0.5
        assert report.precision == 0.5
        assert report.recall == 1.0
        assert math.isclose(report.f1, 2 / 3)

    def test_nothing_called_positive(self):
        """No positive predictions gives zero precision and F1, not an error."""
        report = MetricsReport.from_scores([0.1, 0.2, 0.3, 0.4], [0, 1, 0, 1])
        assert report.precision == 0.0
        assert report.recall == 0.0
        assert report.f1 == 0.0

    def test_threshold_is_inclusive(self):
        """A score of exactly 0.5 is positive."""
        report = MetricsReport.from_scores([0.5, 0.49], [1, 0])
        assert (report.tp, report.tn) == (1, 1)

    def test_counts_add_up(self):
        """Confusion counts cover every bag and match the label counts."""
        rng = np.random.default_rng(4)
        scores = rng.random(40)
        labels = np.array([0, 1] * 20)
        report = MetricsReport.from_scores(scores, labels)
        assert report.total == 40
        assert report.tp + report.fn == 20
        assert report.tn + report.fp == 20
        assert report.accuracy == (report.tp + report.tn) / 40

    def test_roc_is_not_part_of_equality(self):
        """Reports compare by counts and AUC."""
        a = MetricsReport(tp=1, fp=0, tn=1, fn=0, auc=1.0, roc=[])
        b = MetricsReport.from_scores([0.9, 0.1], [1, 0])
        assert a == b


class TestEvaluate(TestCase):
    """Tests for evaluating a model on bags."""

    def setUp(self):  # noqa: D102
        self.model = DcamilNet(TrainConfigFactory().model_config(2))
        self.bags = toy_bags(4)

    def test_one_report_per_head(self):
        """A dual network is scored on both heads."""
        reports = evaluate(self.model, self.bags)
        assert sorted(reports) == ["h1", "h2"]
        for report in reports.values():
            assert report.total == 4
            assert 0.0 <= report.auc <= 1.0

    def test_single_branch_has_one_head(self):
        """Without DN only H1 exists."""
        config = TrainConfigFactory(flags=StrategyFlags(dn=False, cl=False, ca=False))
        model = DcamilNet(config.model_config(2))
        assert sorted(evaluate(model, self.bags)) == ["h1"]
        assert sorted(head_accuracies(model, self.bags)) == ["h1"]

    def test_accuracies_agree_with_reports(self):
        """Validation accuracy uses the same threshold."""
        reports = evaluate(self.model, self.bags)
        accuracies = head_accuracies(self.model, self.bags)
        for head, report in reports.items():
            assert accuracies[head] == report.accuracy

    def test_empty_split_rejected(self):
        """Nothing to evaluate."""
        with self.assertRaises(InputDomainError):
            evaluate(self.model, [])
        with self.assertRaises(InputDomainError):
            head_accuracies(self.model, [])

    def test_evaluate_checkpoint_matches_saved_model(self):
        """A reloaded checkpoint scores the bags exactly like the model that was saved."""
        expected = evaluate(self.model, self.bags)
        with tempfile.TemporaryDirectory() as tmp:
            path = save_checkpoint(self.model, Path(tmp) / "model.pt")
            model, reports = evaluate_checkpoint(path, self.bags)
        assert isinstance(model, DcamilNet)
        assert reports == expected
        assert [p.tpr for p in reports["h1"].roc] == [p.tpr for p in expected["h1"].roc]

    def test_evaluate_missing_checkpoint(self):
        """The error names the checkpoint."""
        with self.assertRaises(MissingArtifactError) as e:
            evaluate_checkpoint(Path("no/such/model.pt"), self.bags)
        assert "checkpoint" in str(e.exception)

    def test_write_metrics(self):
        """metrics.json holds every head plus extras; ROC csvs read back."""
        reports = evaluate(self.model, self.bags)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_metrics(reports, tmp, extra={"best_epoch": 2})
            payload = json.loads(Path(path).read_text())
            assert payload["best_epoch"] == 2
            assert payload["h1"]["tp"] == reports["h1"].tp
            assert payload["h2"]["auc"] == reports["h2"].auc
            points = read_roc_csv(Path(tmp) / "roc_h1.csv")
            assert [(p.fpr, p.tpr) for p in points] == [
                (p.fpr, p.tpr) for p in reports["h1"].roc
            ]
            assert math.isinf(points[0].threshold)
