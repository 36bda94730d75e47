# -*- coding: utf-8 -*-
"""Globally used constants for all apps."""

# Side of the square every instance patch is resized to before encoding.
PATCH_SIZE = 224
PATCH_CHANNELS = 3

# Working resolution of fundus images and their gaze maps.
IMAGE_SIZE = 800

DATASET_SPLITS = [
    ("train", "Train"),
    ("val", "Validation"),
    ("test", "Test"),
]

# Classifier heads of the dual network, in reporting order.
CLASSIFIER_HEADS = [
    ("h1", "DCAMIL-H1"),
    ("h2", "DCAMIL-H2"),
]

# Probabilities are clamped here before taking logs.
PROBABILITY_FLOOR = 1e-12
