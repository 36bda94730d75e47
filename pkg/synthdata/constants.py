# -*- coding: utf-8 -*-
"""Constants for the synthetic data generator."""

# Field of view radius as a fraction of the image side.
FOV_RADIUS_FRACTION = 0.47

# Base fundus colour (RGB) before shading and styling.
FUNDUS_BASE_COLOUR = (0.70, 0.32, 0.15)
SHADING_STRENGTH = 0.12
SHADING_GRID = 9
VIGNETTE_STRENGTH = 0.25

# Optic disc distractor present in every image.
DISC_RADIUS_FRACTION = 0.075
DISC_OFFSET_FRACTION = 0.25
DISC_BRIGHTNESS = (0.30, 0.30, 0.20)

# Planted lesions, sizes given for an 800 pixel image and scaled with it.
LESION_COUNT_RANGE = (1, 4)
LESION_RADIUS_RANGE = (6.0, 20.0)
LESION_MIN_RADIUS = 2.0
LESION_CONTRAST_RANGE = (0.15, 0.4)
LESION_PLACEMENT_TRIES = 200

# Domain styles.
STYLE_GAIN_RANGE = (0.75, 1.25)
STYLE_GAIN_LIMITS = (0.6, 1.4)
STYLE_BRIGHTNESS_RANGE = (-0.08, 0.08)
STYLE_SEED = 7919

# Simulated reader.
FIXATION_JITTER = 30.0
DEFAULT_ATTEND_PROB = 0.8
DEFAULT_FIXATION_COUNT = 30
DISTRACTOR_PROB = 0.5

DEFAULT_DOMAIN_COUNT = 4

# Bag counts as (negative, positive) per split.
SPLIT_COUNT_PRESETS = {
    "desk": {"train": (200, 200), "val": (60, 60), "test": (60, 60)},
    "desk-amd": {"train": (200, 200), "val": (60, 60), "test": (60, 60)},
    "amd": {"train": (357, 340), "val": (100, 100), "test": (100, 100)},
    "dr": {"train": (299, 321), "val": (100, 100), "test": (100, 100)},
}

# Window side M used to crop instances for each preset.
PRESET_WINDOW_SIZES = {
    "desk": 200,
    "desk-amd": 100,
    "amd": 100,
    "dr": 200,
}

MANIFEST_HEADER = ["image", "gaze", "label", "domain", "split"]
LESION_CSV_HEADER = ["x", "y", "radius", "contrast"]

MANIFEST_FILENAME = "manifest.csv"
CONFIG_ECHO_FILENAME = "synth.conf"
