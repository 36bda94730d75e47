# -*- coding: utf-8 -*-
"""Constants for bag building."""

# Instances per bag.
DEFAULT_BAG_SIZE = 10

# Fraction of a lesion's area a window must cover to count as a positive instance.
LESION_COVERAGE_THRESHOLD = 0.25

# Ways of choosing which windows become instances.
INSTANCE_SELECTIONS = [
    ("gaze", "Top-K windows by mean gaze value"),
    ("uniform", "K grid windows drawn uniformly, gaze ignored"),
]

BAG_CSV_HEADER = ["bag_id", "label", "domain", "K", "M", "origins", "instance_labels"]
BAG_INDEX_HEADER = ["bag_id", "label", "domain", "split", "path"]
BAG_INDEX_FILENAME = "bags.csv"
BAG_CSV_FILENAME = "bag.csv"
