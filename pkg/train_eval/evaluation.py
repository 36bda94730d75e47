# -*- coding: utf-8 -*-
"""
Per-head evaluation: confusion counts at a fixed threshold, derived metrics and ROC/AUC.

Counts are kept as integers and every derived metric is computed from them, so a report
can always be re-derived from its TP, FP, TN and FN.
"""

# Standard Library
import json
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import List

# 3rd-party
import numpy as np
import torch

# Project
from common.exceptions import InputDomainError
from common.utils import ensure_directory
from common.utils import format_float
from common.utils import read_csv_rows
from common.utils import write_csv_rows
from dcamil.checkpoints import load_checkpoint
from dcamil.networks import forward_bag

# Local
from .constants import DECISION_THRESHOLD
from .constants import METRICS_FILENAME
from .constants import ROC_HEADER


@dataclass(frozen=True)
class RocPoint:
    """One operating point; the first point of a curve has an infinite threshold."""

    fpr: float
    tpr: float
    threshold: float


def _check_scored_labels(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.ndim != 1 or scores.shape != labels.shape:
        raise InputDomainError(f"{scores.shape} scores but {labels.shape} labels.")
    if scores.size == 0:
        raise InputDomainError("Nothing to evaluate: the split is empty.")
    if not np.isin(labels, (0, 1)).all():
        raise InputDomainError("Labels must be 0 or 1.")
    if not np.isfinite(scores).all():
        raise InputDomainError("Scores must be finite.")
    return scores, labels.astype(np.int64)


def roc_auc(scores, labels):
    """
    ROC points at every distinct threshold and the trapezoidal area under them.

    Each threshold t calls a score positive when score >= t. The area is accumulated in
    integer counts and divided once, so it equals P(s+ > s-) + P(s+ = s-) / 2 exactly.
    """
    scores, labels = _check_scored_labels(scores, labels)
    positives = scores[labels == 1]
    negatives = scores[labels == 0]
    if positives.size == 0 or negatives.size == 0:
        raise InputDomainError("ROC/AUC needs both classes among the labels.")

    thresholds = np.unique(scores)[::-1]
    true_positives = (positives[None, :] >= thresholds[:, None]).sum(axis=1)
    false_positives = (negatives[None, :] >= thresholds[:, None]).sum(axis=1)

    points = [RocPoint(0.0, 0.0, math.inf)]
    area = 0
    previous_tp, previous_fp = 0, 0
    for threshold, tp, fp in zip(thresholds, true_positives.tolist(), false_positives.tolist()):
        points.append(RocPoint(fp / negatives.size, tp / positives.size, float(threshold)))
        area += (fp - previous_fp) * (tp + previous_tp)
        previous_tp, previous_fp = tp, fp
    return points, area / (2 * positives.size * negatives.size)


@dataclass(frozen=True)
class MetricsReport:
    """Confusion counts of one head plus the metrics derived from them."""

    tp: int
    fp: int
    tn: int
    fn: int
    auc: float
    roc: List[RocPoint] = field(default_factory=list, repr=False, compare=False)

    @property
    def total(self):  # noqa: D102
        return self.tp + self.fp + self.tn + self.fn

    @property
    def accuracy(self):  # noqa: D102
        return (self.tp + self.tn) / self.total

    @property
    def precision(self):
        """0 when nothing was predicted positive."""
        predicted = self.tp + self.fp
        return self.tp / predicted if predicted else 0.0

    @property
    def recall(self):  # noqa: D102
        actual = self.tp + self.fn
        return self.tp / actual if actual else 0.0

    @property
    def f1(self):
        """0 when precision and recall are both 0."""
        denominator = self.precision + self.recall
        return 2 * self.precision * self.recall / denominator if denominator else 0.0

    @classmethod
    def from_scores(cls, scores, labels, threshold=DECISION_THRESHOLD):
        """Count predictions at threshold and attach the ROC curve and AUC."""
        scores, labels = _check_scored_labels(scores, labels)
        predicted = scores >= threshold
        actual = labels == 1
        points, auc = roc_auc(scores, labels)
        return cls(
            tp=int((predicted & actual).sum()),
            fp=int((predicted & ~actual).sum()),
            tn=int((~predicted & ~actual).sum()),
            fn=int((~predicted & actual).sum()),
            auc=auc,
            roc=points,
        )

    def as_dict(self):
        """Counts and metrics, without the ROC points."""
        return {
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "auc": self.auc,
        }

    def metric_cells(self):
        """Metrics formatted for a CSV row."""
        return [
            format_float(value)
            for value in (self.accuracy, self.precision, self.recall, self.f1, self.auc)
        ]


def predict_scores(model, bags, mode=None):
    """Positive-class probability of every bag, per head, with gradients off."""
    model.eval()
    scores = {}
    with torch.no_grad():
        for bag in bags:
            for head, score in forward_bag(model, bag, mode).positive_scores.items():
                scores.setdefault(head, []).append(score)
    return scores


def bag_labels(bags):
    """Labels of a bag sequence, read from the index when the sequence carries one."""
    labels = getattr(bags, "labels", None)
    if labels is not None:
        return list(labels)
    return [bag.label for bag in bags]


def head_accuracies(model, bags, threshold=DECISION_THRESHOLD):
    """{head: accuracy} at the decision threshold."""
    labels = np.asarray(bag_labels(bags))
    if labels.size == 0:
        raise InputDomainError("Nothing to evaluate: the split is empty.")
    accuracies = {}
    for head, scores in predict_scores(model, bags).items():
        predicted = (np.asarray(scores) >= threshold).astype(np.int64)
        accuracies[head] = float((predicted == labels).mean())
    return accuracies


def evaluate(model, bags, mode=None):
    """{head: MetricsReport} over a split."""
    labels = bag_labels(bags)
    if not labels:
        raise InputDomainError("Nothing to evaluate: the split is empty.")
    reports = {
        head: MetricsReport.from_scores(scores, labels)
        for head, scores in predict_scores(model, bags, mode).items()
    }
    for head, report in reports.items():
        log_info = (
            f"{head}: accuracy {report.accuracy:.4f}, precision {report.precision:.4f}, "
            f"recall {report.recall:.4f}, F1 {report.f1:.4f}, AUC {report.auc:.4f} "
            f"over {report.total} bags."
        )
        logging.info(log_info)
    return reports


def evaluate_checkpoint(path, bags):
    """
    Load a checkpoint and evaluate it; the stored config must fit the stored tensors.

    Returns (model, {head: MetricsReport}) so callers can keep inspecting the model.
    """
    model, _ = load_checkpoint(path)
    return model, evaluate(model, bags)


def write_roc_csv(points, path):  # noqa: D103
    rows = [
        (format_float(point.fpr), format_float(point.tpr), format_float(point.threshold))
        for point in points
    ]
    return write_csv_rows(path, ROC_HEADER, rows)


def read_roc_csv(path):  # noqa: D103
    return [
        RocPoint(float(row["fpr"]), float(row["tpr"]), float(row["threshold"]))
        for row in read_csv_rows(path, expected_header=ROC_HEADER)
    ]


def write_metrics(reports, out_dir, extra=None):
    """
    Write metrics.json and one roc_<head>.csv per head into out_dir.

    Returns the metrics path.
    """
    out_dir = ensure_directory(out_dir)
    payload = {head: report.as_dict() for head, report in sorted(reports.items())}
    if extra:
        payload.update(extra)
    for head, report in reports.items():
        write_roc_csv(report.roc, out_dir / f"roc_{head}.csv")
    path = Path(out_dir) / METRICS_FILENAME
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return path
