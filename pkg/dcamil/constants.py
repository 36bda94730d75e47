# -*- coding: utf-8 -*-
"""Constants for the DCAMIL network and its losses."""

ENCODER_PRESETS = [
    ("small", "Strided convolutional encoder"),
    ("resnet18", "ResNet-18"),
    ("resnet50", "ResNet-50"),
]

# Output dimension Q of each encoder preset; the small encoder's is its last width.
RESNET_FEATURE_DIMS = {
    "resnet18": 512,
    "resnet50": 2048,
}
SMALL_ENCODER_WIDTHS = (16, 32, 64, 128)

ATTENTION_MODES = [
    ("cross", "Cross attention"),
    ("independent", "Independent attention"),
]

N_CLASSES = 2

DEFAULT_EMBEDDING_DIM = 128
DEFAULT_ATTENTION_DIM = 64
DEFAULT_DOMAIN_HIDDEN_DIM = 64

DEFAULT_ENCODER_SEED = 0
DEFAULT_BRANCH_SEEDS = (1, 2)
DEFAULT_DOMAIN_SEED = 3

# Loss weights and temperatures.
DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 0.1
DEFAULT_GAMMA = 0.1
DEFAULT_TAU = 0.5
DEFAULT_LAMBDA_GRL = 1.0

CHECKPOINT_VERSION = 1
