# -*- coding: utf-8 -*-
"""
Fundus-like images with planted lesions, and a simulated reader looking at them.

Everything is driven by explicit seeds. Nothing here touches global random state.
"""

# Standard Library
import math
from dataclasses import dataclass
from typing import Tuple

# 3rd-party
import numpy as np
import torch
import torch.nn.functional as F

# Project
from common.constants import IMAGE_SIZE
from common.exceptions import InputDomainError
from common.utils import derive_seed
from gaze_render.rendering import FixationPoint

# Local
from .constants import DISC_BRIGHTNESS
from .constants import DISC_OFFSET_FRACTION
from .constants import DISC_RADIUS_FRACTION
from .constants import DISTRACTOR_PROB
from .constants import FIXATION_JITTER
from .constants import FOV_RADIUS_FRACTION
from .constants import FUNDUS_BASE_COLOUR
from .constants import LESION_CONTRAST_RANGE
from .constants import LESION_COUNT_RANGE
from .constants import LESION_MIN_RADIUS
from .constants import LESION_PLACEMENT_TRIES
from .constants import LESION_RADIUS_RANGE
from .constants import SHADING_GRID
from .constants import SHADING_STRENGTH
from .constants import STYLE_BRIGHTNESS_RANGE
from .constants import STYLE_GAIN_LIMITS
from .constants import STYLE_GAIN_RANGE
from .constants import STYLE_SEED
from .constants import VIGNETTE_STRENGTH


@dataclass(frozen=True)
class LesionSpec:
    """A round blob planted in an image; positive contrast is bright, negative dark."""

    center: Tuple[float, float]
    radius: float
    contrast: float

    def __post_init__(self):  # noqa: D105
        if self.radius < LESION_MIN_RADIUS:
            raise InputDomainError(
                f"Lesion radius must be at least {LESION_MIN_RADIUS} pixels, got {self.radius}.",
            )

    @property
    def area(self):
        """Area of the lesion disk."""
        return math.pi * self.radius ** 2


@dataclass(frozen=True)
class DomainStyle:
    """Per-channel gain and additive offset standing in for a camera/site style."""

    domain_id: int
    tint: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    brightness: float = 0.0

    def __post_init__(self):  # noqa: D105
        low, high = STYLE_GAIN_LIMITS
        if any(not (low <= gain <= high) for gain in self.tint):
            raise InputDomainError(f"Style gains must lie in [{low}, {high}], got {self.tint}.")

    @classmethod
    def for_domain(cls, domain_id, n_domains):
        """The fixed style of a domain out of n_domains."""
        if not 0 <= domain_id < n_domains:
            raise InputDomainError(f"Domain {domain_id} is outside [0, {n_domains}).")
        rng = np.random.default_rng(derive_seed(STYLE_SEED, domain_id))
        tint = tuple(float(gain) for gain in rng.uniform(*STYLE_GAIN_RANGE, size=3))
        brightness = float(rng.uniform(*STYLE_BRIGHTNESS_RANGE))
        return cls(domain_id=domain_id, tint=tint, brightness=brightness)

    def apply(self, values, mask):
        """Apply gains then offset inside the mask, clip to [0, 1], zero outside."""
        styled = np.clip(values * np.asarray(self.tint) + self.brightness, 0.0, 1.0)
        return np.where(mask[..., None], styled, 0.0)

    def invert(self, values):
        """Undo apply wherever it did not clip."""
        return (values - self.brightness) / np.asarray(self.tint)


@dataclass(eq=False)
class FundusImage:
    """
    An RGB image with values in [0, 1] and a circular field of view.

    values is (height, width, 3) float64. The optic disc distractor position is kept so
    the simulated reader can glance at it.
    """

    values: np.ndarray
    mask: np.ndarray
    disc_center: Tuple[float, float]
    disc_radius: float

    @property
    def height(self):  # noqa: D102
        return self.values.shape[0]

    @property
    def width(self):  # noqa: D102
        return self.values.shape[1]

    @property
    def channels(self):  # noqa: D102
        return self.values.shape[2]

    @staticmethod
    def field_of_view(size):
        """Centre and radius of the circular field of view for a square image."""
        return (size - 1) / 2.0, FOV_RADIUS_FRACTION * size

    @classmethod
    def circular_mask(cls, size):
        """Boolean mask of the field of view."""
        centre, radius = cls.field_of_view(size)
        rows, cols = np.mgrid[0:size, 0:size]
        return (cols - centre) ** 2 + (rows - centre) ** 2 <= radius ** 2


def _disk_weight(size, center, radius):
    """Anti-aliased disk indicator, one pixel soft edge."""
    rows, cols = np.mgrid[0:size, 0:size]
    distance = np.hypot(cols - center[0], rows - center[1])
    return np.clip(radius + 0.5 - distance, 0.0, 1.0)


def _shading(rng, size):
    """Smooth low-frequency texture in roughly [-1, 1]."""
    grid = torch.from_numpy(rng.normal(size=(1, 1, SHADING_GRID, SHADING_GRID)))
    field = F.interpolate(grid, size=(size, size), mode="bilinear", align_corners=True)
    return field[0, 0].numpy()


def _uniform_in_disk(rng, centre, radius):
    """Uniform point in a disk."""
    angle = rng.uniform(0.0, 2.0 * math.pi)
    distance = radius * math.sqrt(rng.uniform(0.0, 1.0))
    return centre + distance * math.cos(angle), centre + distance * math.sin(angle)


def _plant_lesions(rng, size, disc_center, disc_radius):
    scale = size / IMAGE_SIZE
    fov_centre, fov_radius = FundusImage.field_of_view(size)
    count = int(rng.integers(LESION_COUNT_RANGE[0], LESION_COUNT_RANGE[1] + 1))
    lesions = []
    for _ in range(count):
        radius = max(LESION_MIN_RADIUS, float(rng.uniform(*LESION_RADIUS_RANGE)) * scale)
        contrast = float(rng.uniform(*LESION_CONTRAST_RANGE)) * float(rng.choice([-1.0, 1.0]))
        for _ in range(LESION_PLACEMENT_TRIES):
            center = _uniform_in_disk(rng, fov_centre, fov_radius - radius - 2.0)
            clearance = math.hypot(center[0] - disc_center[0], center[1] - disc_center[1])
            if clearance > disc_radius + radius + 10.0 * scale:
                break
        lesions.append(LesionSpec(center=center, radius=radius, contrast=contrast))
    return lesions


def gen_image(label, style, seed, size=IMAGE_SIZE):
    """
    Generate a fundus-like image and its lesion list.

    Background is smooth shading inside a circular mask plus a bright optic disc.
    label=1 plants 1-4 lesions, label=0 none. The style is applied last.
    """
    if label not in (0, 1):
        raise InputDomainError(f"Label must be 0 or 1, got {label}.")
    rng = np.random.default_rng(seed)
    mask = FundusImage.circular_mask(size)
    fov_centre, fov_radius = FundusImage.field_of_view(size)

    rows, cols = np.mgrid[0:size, 0:size]
    rim = ((cols - fov_centre) ** 2 + (rows - fov_centre) ** 2) / fov_radius ** 2
    shading = 1.0 + SHADING_STRENGTH * _shading(rng, size)
    vignette = 1.0 - VIGNETTE_STRENGTH * np.clip(rim, 0.0, 1.0)
    values = (shading * vignette)[..., None] * np.asarray(FUNDUS_BASE_COLOUR)

    side = float(rng.choice([-1.0, 1.0]))
    disc_center = (
        fov_centre + side * DISC_OFFSET_FRACTION * size,
        fov_centre + float(rng.uniform(-0.05, 0.05)) * size,
    )
    disc_radius = DISC_RADIUS_FRACTION * size
    disc = _disk_weight(size, disc_center, disc_radius)
    values = values + disc[..., None] * np.asarray(DISC_BRIGHTNESS)

    lesions = _plant_lesions(rng, size, disc_center, disc_radius) if label == 1 else []
    for lesion in lesions:
        values = values + lesion.contrast * _disk_weight(size, lesion.center, lesion.radius)[
            ..., None
        ]

    values = style.apply(np.clip(values, 0.0, 1.0), mask)
    image = FundusImage(
        values=values,
        mask=mask,
        disc_center=disc_center,
        disc_radius=disc_radius,
    )
    return image, lesions


def gen_fixations(image, lesions, n_fix, attend_prob, seed, jitter=FIXATION_JITTER):
    """
    Simulate a reader's fixations on an image.

    With probability attend_prob (only when lesions exist) a fixation lands near a
    uniformly chosen lesion; otherwise near the optic disc or anywhere in the field of
    view. All points are clamped inside the image.
    """
    if n_fix < 1:
        raise InputDomainError(f"At least one fixation is needed, got {n_fix}.")
    if not 0.0 <= attend_prob <= 1.0:
        raise InputDomainError(f"attend_prob must lie in [0, 1], got {attend_prob}.")

    rng = np.random.default_rng(seed)
    in_mask = np.flatnonzero(image.mask)
    fixations = []
    for _ in range(n_fix):
        if lesions and rng.random() < attend_prob:
            lesion = lesions[int(rng.integers(len(lesions)))]
            x, y = np.asarray(lesion.center) + rng.normal(0.0, jitter, size=2)
        elif rng.random() < DISTRACTOR_PROB:
            x, y = np.asarray(image.disc_center) + rng.normal(0.0, jitter, size=2)
        else:
            row, col = np.unravel_index(int(rng.choice(in_mask)), image.mask.shape)
            x, y = float(col), float(row)
        fixations.append(
            FixationPoint(
                x=int(np.clip(round(float(x)), 0, image.width - 1)),
                y=int(np.clip(round(float(y)), 0, image.height - 1)),
            ),
        )
    return fixations
