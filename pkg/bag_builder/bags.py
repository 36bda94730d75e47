# -*- coding: utf-8 -*-
"""Instance bags: cropping, labelling and sequence augmentation."""

# Standard Library
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Tuple

# 3rd-party
import numpy as np
import torch
import torch.nn.functional as F

# Project
from common.constants import PATCH_CHANNELS
from common.constants import PATCH_SIZE
from common.exceptions import InputDomainError

# Local
from .constants import LESION_COVERAGE_THRESHOLD
from .windows import score_windows
from .windows import select_top_k
from .windows import select_uniform_k


@dataclass(eq=False)
class InstanceBag:
    """
    K resized patches with the bag label, its domain and where each patch came from.

    instances is a (K, 224, 224, 3) float32 array of real values in [0, 1], kept at full
    precision; only the on-disk cache rounds them to 8 bits. instance_labels is only known
    for synthetic data.
    """

    bag_id: str
    instances: np.ndarray
    label: int
    domain: int
    positions: List[Tuple[int, int]]
    window: int
    instance_labels: Optional[List[int]] = None

    def __post_init__(self):  # noqa: D105
        expected = (PATCH_SIZE, PATCH_SIZE, PATCH_CHANNELS)
        instances = np.asarray(self.instances)
        if instances.ndim != 4 or instances.shape[1:] != expected:
            raise InputDomainError(
                f"Bag {self.bag_id} instances have shape {instances.shape}, "
                f"expected (K, {PATCH_SIZE}, {PATCH_SIZE}, {PATCH_CHANNELS}).",
            )
        if not np.issubdtype(instances.dtype, np.floating):
            raise InputDomainError(
                f"Bag {self.bag_id} instances must be real values in [0, 1], "
                f"got dtype {instances.dtype}.",
            )
        if instances.size and (instances.min() < 0.0 or instances.max() > 1.0):
            raise InputDomainError(f"Bag {self.bag_id} instances leave [0, 1].")
        self.instances = instances.astype(np.float32, copy=False)
        if len(self.positions) != self.size:
            raise InputDomainError(
                f"Bag {self.bag_id} has {self.size} instances, {len(self.positions)} positions.",
            )
        if self.label not in (0, 1):
            raise InputDomainError(f"Bag {self.bag_id} label must be 0 or 1, got {self.label}.")
        if self.instance_labels is not None:
            self._check_instance_labels()

    def _check_instance_labels(self):
        if len(self.instance_labels) != self.size:
            raise InputDomainError(
                f"Bag {self.bag_id} has {self.size} instances but "
                f"{len(self.instance_labels)} instance labels.",
            )
        if self.label == 0 and any(self.instance_labels):
            raise InputDomainError(
                f"Negative bag {self.bag_id} holds a positive instance; a bag is negative "
                f"only if all of its instances are.",
            )

    @property
    def size(self):
        """K."""
        return int(self.instances.shape[0])


def lesion_coverage(origin, window, lesion):
    """Fraction of a lesion disk's pixels that fall inside the window at origin."""
    row, col = origin
    cx, cy = lesion.center
    r = lesion.radius
    rows = np.arange(math.floor(cy - r), math.ceil(cy + r) + 1)
    cols = np.arange(math.floor(cx - r), math.ceil(cx + r) + 1)
    grid_rows, grid_cols = np.meshgrid(rows, cols, indexing="ij")
    inside_disk = (grid_cols - cx) ** 2 + (grid_rows - cy) ** 2 <= r ** 2
    total = int(inside_disk.sum())
    if total == 0:
        return 0.0
    inside_window = (
        (grid_rows >= row)
        & (grid_rows < row + window)
        & (grid_cols >= col)
        & (grid_cols < col + window)
    )
    return float((inside_disk & inside_window).sum()) / total


def label_instances(positions, window, lesions):
    """y = 1 for windows covering at least a quarter of some lesion."""
    return [
        int(
            any(
                lesion_coverage(origin, window, lesion) >= LESION_COVERAGE_THRESHOLD
                for lesion in lesions
            ),
        )
        for origin in positions
    ]


def _resize_patches(patches):
    """(K, M, M, 3) values in [0, 1] -> (K, 224, 224, 3) float32 by bilinear interpolation."""
    tensor = torch.from_numpy(np.ascontiguousarray(patches, dtype=np.float64)).permute(0, 3, 1, 2)
    if tensor.shape[-1] != PATCH_SIZE:
        tensor = F.interpolate(
            tensor,
            size=(PATCH_SIZE, PATCH_SIZE),
            mode="bilinear",
            align_corners=False,
        )
    resized = tensor.permute(0, 2, 3, 1).numpy()
    return np.clip(resized, 0.0, 1.0).astype(np.float32)


def crop_bag(
    image,
    selected,
    window,
    label,
    domain,
    bag_id="bag",
    lesions=None,
):
    """
    Crop the selected windows out of the image and resize each to 224 x 224.

    Positions keep the selection order. When lesions are given the instance labels are
    filled in from them.
    """
    height, width = image.values.shape[:2]
    patches = []
    for window_score in selected:
        row, col = window_score.origin
        if row < 0 or col < 0 or row + window > height or col + window > width:
            raise InputDomainError(
                f"Window at (row={row}, col={col}) of size {window} leaves the "
                f"{width}x{height} image.",
            )
        patches.append(image.values[row : row + window, col : col + window, :PATCH_CHANNELS])

    positions = [window_score.origin for window_score in selected]
    instance_labels = None
    if lesions is not None:
        instance_labels = label_instances(positions, window, lesions)
        if label == 1 and not any(instance_labels):
            logging.warning(f"Positive bag {bag_id} has no instance covering a lesion.")
    return InstanceBag(
        bag_id=bag_id,
        instances=_resize_patches(np.stack(patches)),
        label=label,
        domain=domain,
        positions=positions,
        window=window,
        instance_labels=instance_labels,
    )


def build_bag(
    image,
    gaze_map,
    k,
    window,
    label,
    domain,
    bag_id="bag",
    lesions=None,
    selection="gaze",
    seed=0,
):
    """
    Score windows on the gaze map, select K of them and crop the bag.

    selection is "gaze" (top-K by gaze) or "uniform" (seeded uniform draw, gaze ignored).
    """
    if image.values.shape[:2] != gaze_map.values.shape:
        raise InputDomainError(
            f"Image is {image.values.shape[1]}x{image.values.shape[0]} but its gaze map is "
            f"{gaze_map.width}x{gaze_map.height}.",
        )
    scores = score_windows(gaze_map, window)
    if selection == "gaze":
        selected = select_top_k(scores, k)
    elif selection == "uniform":
        selected = select_uniform_k(scores, k, seed)
    else:
        raise InputDomainError(f"Unknown instance selection {selection!r}.")
    return crop_bag(image, selected, window, label, domain, bag_id=bag_id, lesions=lesions)


def permute_bag(bag, permutation):
    """Reorder instances, positions and instance labels by one shared permutation."""
    permutation = [int(i) for i in permutation]
    if sorted(permutation) != list(range(bag.size)):
        raise InputDomainError(f"{permutation} is not a permutation of {bag.size} instances.")
    instance_labels = bag.instance_labels
    if instance_labels is not None:
        instance_labels = [instance_labels[i] for i in permutation]
    return dataclasses.replace(
        bag,
        instances=bag.instances[permutation],
        positions=[bag.positions[i] for i in permutation],
        instance_labels=instance_labels,
    )


def augmentation_permutation(size, seed):
    """The permutation sequence_augment draws for a bag of this size and seed."""
    return np.random.default_rng(seed).permutation(size)


def sequence_augment(bag, seed):
    """Shuffle the instance order of a bag, deterministically in the seed."""
    return permute_bag(bag, augmentation_permutation(bag.size, seed))
