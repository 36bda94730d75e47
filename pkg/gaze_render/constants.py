# -*- coding: utf-8 -*-
"""Constants for gaze rendering."""

# Spread of the Gaussian placed on each fixation, in pixels.
DEFAULT_SIGMA = 60.0

# Each kernel is cut off this many sigmas from its centre.
TRUNCATION_SIGMAS = 3.0

# Gaze maps are stored as single channel 8-bit images.
QUANTIZED_MAX = 255

FIXATION_CSV_HEADER = ["x", "y"]
