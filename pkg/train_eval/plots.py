# -*- coding: utf-8 -*-
"""
SVG figures for ROC and stability curves.

Figures carry a fixed hash salt and no date, so the same data always gives the same
bytes.
"""

# Standard Library
import math
from pathlib import Path

# 3rd-party
import matplotlib

matplotlib.use("Agg")

# 3rd-party
from matplotlib import rc_context  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

# Project
from common.constants import CLASSIFIER_HEADS  # noqa: E402
from common.utils import ensure_directory  # noqa: E402

HEAD_NAMES = dict(CLASSIFIER_HEADS)
GOLDEN_RATIO = (math.sqrt(5) - 1.0) / 2.0
FIGURE_WIDTH = 5.0
SVG_SETTINGS = {
    "svg.hashsalt": "gaze-mil",
    "svg.fonttype": "path",
    "font.size": 9,
}


def new_figure(width=FIGURE_WIDTH, height=None):
    """A figure and its single axes; height defaults to width times the golden ratio."""
    figure = Figure(figsize=(width, height or width * GOLDEN_RATIO))
    return figure, figure.add_subplot(1, 1, 1)


def save_svg(figure, path):
    """Save without a timestamp."""
    path = Path(path)
    ensure_directory(path.parent)
    with rc_context(SVG_SETTINGS):
        figure.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    return path


def plot_roc_curves(curves, path):
    """
    curves maps a label to a list of RocPoints; one line per label plus the chance line.

    AUCs, when known, belong in the label.
    """
    figure, axes = new_figure(height=FIGURE_WIDTH)
    axes.plot([0, 1], [0, 1], linestyle=":", color="grey", linewidth=0.8)
    for label, points in curves.items():
        axes.plot([p.fpr for p in points], [p.tpr for p in points], label=label, linewidth=1.2)
    axes.set_xlim(0, 1)
    axes.set_ylim(0, 1.01)
    axes.set_xlabel("False positive rate")
    axes.set_ylabel("True positive rate")
    axes.legend(loc="lower right", frameon=False)
    return save_svg(figure, path)


def plot_stability_curves(epochs, path):
    """Validation accuracy per epoch for each head of a run."""
    figure, axes = new_figure()
    x = [record.epoch for record in epochs]
    heads = ["h1"]
    if epochs and epochs[0].val_acc_h2 is not None:
        heads.append("h2")
    for head in heads:
        accuracies = [getattr(record, f"val_acc_{head}") for record in epochs]
        axes.plot(x, accuracies, label=HEAD_NAMES[head], linewidth=1.2)
    axes.set_ylim(0, 1.01)
    axes.set_xlabel("Epoch")
    axes.set_ylabel("Validation accuracy")
    axes.legend(loc="lower right", frameon=False)
    return save_svg(figure, path)
