# -*- coding: utf-8 -*-
"""Reading and writing fixation CSVs and gaze map images."""

# Standard Library
from pathlib import Path

# 3rd-party
import numpy as np
from PIL import Image

# Project
from common.exceptions import InputDomainError
from common.utils import ensure_directory
from common.utils import read_csv_rows
from common.utils import require_artifact
from common.utils import write_csv_rows

# Local
from .constants import FIXATION_CSV_HEADER
from .rendering import FixationPoint
from .rendering import GazeMap
from .rendering import quantize_gaze_map


def write_fixations_csv(fixations, path):
    """Write fixations as an `x,y` CSV."""
    return write_csv_rows(path, FIXATION_CSV_HEADER, [(p.x, p.y) for p in fixations])


def read_fixations_csv(path):
    """Read an `x,y` CSV of integer pixel positions."""
    fixations = []
    for row in read_csv_rows(path, expected_header=FIXATION_CSV_HEADER):
        try:
            fixations.append(FixationPoint(x=int(row["x"]), y=int(row["y"])))
        except ValueError:
            raise InputDomainError(f"{path} holds a non-integer fixation row {row}.")
    return fixations


def save_gaze_map_image(gaze_map, path):
    """Write the map as an 8-bit grayscale PNG, quantizing first if needed."""
    if gaze_map.quantized is None:
        gaze_map = quantize_gaze_map(gaze_map)
    path = Path(path)
    ensure_directory(path.parent)
    Image.fromarray(gaze_map.quantized).save(path)
    return path


def load_gaze_map_image(path):
    """Load an 8-bit grayscale gaze map image."""
    with Image.open(require_artifact(path, "gaze map image")) as image:
        quantized = np.array(image.convert("L"), dtype=np.uint8)
    return GazeMap.from_quantized(quantized)
