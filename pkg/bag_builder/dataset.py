# -*- coding: utf-8 -*-
"""Build the bags of a whole dataset manifest."""

# Standard Library
import logging

# Project
from common.utils import derive_seed
from gaze_render.files import load_gaze_map_image
from synthdata.manifest import SPLIT_NAMES
from synthdata.manifest import load_fundus_image
from synthdata.manifest import read_lesions_csv

# Local
from .bags import build_bag
from .constants import DEFAULT_BAG_SIZE


def iter_manifest_bags(manifest, k=DEFAULT_BAG_SIZE, window=200, selection="gaze", seed=0):
    """
    Yield (split, bag) for every manifest entry, in manifest order.

    Lesion sidecars, when present, give the bags their instance labels. seed only matters
    for uniform selection.
    """
    for index, entry in enumerate(manifest.entries):
        lesions_path = entry.lesions_path(manifest.root)
        lesions = read_lesions_csv(lesions_path) if lesions_path.exists() else None
        bag = build_bag(
            image=load_fundus_image(manifest.root / entry.image),
            gaze_map=load_gaze_map_image(manifest.root / entry.gaze),
            k=k,
            window=window,
            label=entry.label,
            domain=entry.domain,
            bag_id=entry.entry_id,
            lesions=lesions,
            selection=selection,
            seed=derive_seed(seed, index),
        )
        yield entry.split, bag

    log_info = (
        f"Built {len(manifest.entries)} bags (K={k}, M={window}, {selection} selection) "
        f"from {manifest.path}."
    )
    logging.info(log_info)


def build_manifest_bags(manifest, k=DEFAULT_BAG_SIZE, window=200, selection="gaze", seed=0):
    """All bags of a manifest held in memory as {split: [bags]}."""
    split_bags = {split: [] for split in SPLIT_NAMES}
    for split, bag in iter_manifest_bags(manifest, k, window, selection, seed):
        split_bags[split].append(bag)
    return split_bags
