# -*- coding: utf-8 -*-
"""Gaussian splatting of fixation points into gaze maps."""

# Standard Library
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional

# 3rd-party
import numpy as np

# Project
from common.exceptions import InputDomainError

# Local
from .constants import DEFAULT_SIGMA
from .constants import QUANTIZED_MAX
from .constants import TRUNCATION_SIGMAS


@dataclass(frozen=True)
class FixationPoint:
    """A single place the reader's gaze rested, in integer pixels (column x, row y)."""

    x: int
    y: int

    def in_bounds(self, width, height):
        """Is the point inside a width x height image."""
        return 0 <= self.x < width and 0 <= self.y < height


@dataclass(frozen=True)
class GaussianSpec:
    """Spread of the kernel placed on each fixation."""

    sigma: float = DEFAULT_SIGMA

    def __post_init__(self):  # noqa: D105
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise InputDomainError(f"Gaussian sigma must be a positive number, got {self.sigma}.")

    @property
    def radius(self):
        """Half-width of the truncated kernel support in whole pixels."""
        return int(math.floor(TRUNCATION_SIGMAS * self.sigma))

    @property
    def peak(self):
        """Kernel value at its centre."""
        return 1.0 / (2.0 * math.pi * self.sigma ** 2)


@dataclass(eq=False)
class GazeMap:
    """
    A per-pixel attention field.

    values is a (height, width) float64 grid; quantized is the 8-bit form once computed.
    """

    width: int
    height: int
    values: np.ndarray
    quantized: Optional[np.ndarray] = None

    @classmethod
    def from_quantized(cls, quantized):
        """Rebuild a map from its stored 8-bit form. Scores are then taken on 0-255 values."""
        quantized = np.asarray(quantized, dtype=np.uint8)
        height, width = quantized.shape
        return cls(
            width=width,
            height=height,
            values=quantized.astype(np.float64),
            quantized=quantized,
        )

    @property
    def argmax(self):
        """(x, y) of the first maximal value."""
        row, col = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return int(col), int(row)


def gaussian_kernel(spec):
    """Return the truncated (2r+1) x (2r+1) kernel for spec, centred at [r, r]."""
    offsets = np.arange(-spec.radius, spec.radius + 1, dtype=np.float64)
    profile = np.exp(-(offsets ** 2) / (2.0 * spec.sigma ** 2))
    return np.outer(profile, profile) * spec.peak


def render_gaze_map(fixations, width, height, spec=None):
    """
    Sum one truncated Gaussian per fixation into a width x height map.

    Fixations must all lie inside the image. Overlapping kernels add; there is no
    saturation before quantization.
    """
    spec = spec or GaussianSpec()
    if width <= 0 or height <= 0:
        raise InputDomainError(f"Gaze map size must be positive, got {width}x{height}.")

    fixations = list(fixations)
    for point in fixations:
        if not point.in_bounds(width, height):
            raise InputDomainError(
                f"Fixation (x={point.x}, y={point.y}) is outside the {width}x{height} image.",
            )

    values = np.zeros((height, width), dtype=np.float64)
    kernel = gaussian_kernel(spec)
    radius = spec.radius
    for point in fixations:
        top, bottom = max(0, point.y - radius), min(height, point.y + radius + 1)
        left, right = max(0, point.x - radius), min(width, point.x + radius + 1)
        kernel_top = top - (point.y - radius)
        kernel_left = left - (point.x - radius)
        values[top:bottom, left:right] += kernel[
            kernel_top : kernel_top + (bottom - top),
            kernel_left : kernel_left + (right - left),
        ]

    logging.debug(f"Rendered {len(fixations)} fixations onto a {width}x{height} gaze map.")
    return GazeMap(width=width, height=height, values=values)


def quantize_gaze_map(gaze_map):
    """
    Populate the 8-bit form: floor(255 * value / max).

    An all-zero map stays all-zero.
    """
    peak = float(gaze_map.values.max()) if gaze_map.values.size else 0.0
    if peak <= 0.0:
        quantized = np.zeros(gaze_map.values.shape, dtype=np.uint8)
    else:
        # Divide first so the peak maps to exactly 1.0 and then exactly 255.
        scaled = np.floor(gaze_map.values / peak * QUANTIZED_MAX)
        quantized = np.clip(scaled, 0, QUANTIZED_MAX).astype(np.uint8)
    return dataclasses.replace(gaze_map, quantized=quantized)
