# -*- coding: utf-8 -*-
"""Constants for training, evaluation and the experiment runners."""

# Desk-scale training defaults; paper scale swaps in the second set.
DEFAULT_EPOCHS = 30
DEFAULT_LEARNING_RATE = 1e-3
DEFAULT_MOMENTUM = 0.9
PAPER_SCALE_EPOCHS = 100
PAPER_SCALE_LEARNING_RATE = 1e-4
PAPER_SCALE_ENCODER = "resnet18"

# Positive-class probability at or above which a bag is called positive.
DECISION_THRESHOLD = 0.5

STRATEGY_FLAGS = [
    ("dn", "DN"),
    ("cl", "CL"),
    ("ca", "CA"),
    ("sa", "SA"),
    ("da", "DA"),
]

# Strategy rows vary DN, CL and CA with SA and DA on.
STRATEGY_GRID = [
    {"dn": False, "cl": False, "ca": False, "sa": True, "da": True},
    {"dn": True, "cl": False, "ca": False, "sa": True, "da": True},
    {"dn": True, "cl": True, "ca": False, "sa": True, "da": True},
    {"dn": True, "cl": True, "ca": True, "sa": True, "da": True},
]

# Module rows vary SA and DA with DN, CL and CA on.
MODULE_GRID = [
    {"dn": True, "cl": True, "ca": True, "sa": False, "da": False},
    {"dn": True, "cl": True, "ca": True, "sa": True, "da": False},
    {"dn": True, "cl": True, "ca": True, "sa": False, "da": True},
    {"dn": True, "cl": True, "ca": True, "sa": True, "da": True},
]

ABLATION_GRIDS = {
    "strategy": STRATEGY_GRID,
    "module": MODULE_GRID,
}

K_SWEEP = (10, 20, 30, 40, 50)
COMPARISON_SEEDS = (0, 1, 2)

RUN_STATUSES = [
    ("running", "Running"),
    ("finished", "Finished"),
    ("diverged", "Diverged"),
]

TRAIN_LOG_HEADER = ["epoch", "L1", "L2", "L3", "total", "val_acc_h1", "val_acc_h2"]
STABILITY_HEADER = ["epoch", "val_acc_h1", "val_acc_h2"]
ROC_HEADER = ["fpr", "tpr", "threshold"]
METRIC_COLUMNS = ["accuracy", "precision", "recall", "f1", "auc"]
ABLATION_HEADER = ["strategy", "DN", "CL", "CA", "SA", "DA", "head"] + METRIC_COLUMNS
K_SWEEP_HEADER = ["method", "K", "head"] + METRIC_COLUMNS
COMPARISON_HEADER = ["method", "seed", "head"] + METRIC_COLUMNS
ATTENTION_HEADER = [
    "bag_id",
    "bag_label",
    "instance",
    "row",
    "col",
    "instance_label",
    "att1",
    "att2",
    "p_h1",
    "p_h2",
]

TRAIN_LOG_FILENAME = "train_log.csv"
STABILITY_FILENAME = "stability.csv"
BEST_CHECKPOINT_FILENAME = "best.pt"
METRICS_FILENAME = "metrics.json"
K_SWEEP_FILENAME = "k_sweep.csv"
CONFIG_ECHO_FILENAME = "train.conf"
