# -*- coding: utf-8 -*-
"""
On-disk bag cache.

One directory per bag holding instance_00.png ... and a one-row bag.csv, plus a bags.csv
index at the cache root. Instances are rounded to 8 bits on save; lossless PNG then
loads that rounding back bit for bit, so a reloaded bag is within 1/510 of the saved one.
"""

# Standard Library
import logging
from collections.abc import Sequence
from pathlib import Path

# 3rd-party
import numpy as np
from PIL import Image

# Project
from common.utils import ensure_directory
from common.utils import read_csv_rows
from common.utils import require_artifact
from common.utils import write_csv_rows

# Local
from .bags import InstanceBag
from .constants import BAG_CSV_FILENAME
from .constants import BAG_CSV_HEADER
from .constants import BAG_INDEX_FILENAME
from .constants import BAG_INDEX_HEADER


def _instance_filename(index):
    return f"instance_{index:02d}.png"


def _format_origins(positions):
    return ";".join(f"{row}:{col}" for row, col in positions)


def _parse_origins(text):
    return [tuple(int(part) for part in pair.split(":")) for pair in text.split(";") if pair]


def quantize_instances(instances):
    """Instances in [0, 1] as the uint8 values the cache stores."""
    return np.round(np.clip(instances, 0.0, 1.0) * 255.0).astype(np.uint8)


def _read_patch(path):
    with Image.open(path) as image:
        pixels = np.array(image.convert("RGB"), dtype=np.uint8)
    return pixels.astype(np.float32) / np.float32(255.0)


def save_bag(bag, directory):
    """Write one bag into its own directory."""
    directory = ensure_directory(directory)
    pixels = quantize_instances(bag.instances)
    for index in range(bag.size):
        Image.fromarray(pixels[index]).save(directory / _instance_filename(index))
    instance_labels = ""
    if bag.instance_labels is not None:
        instance_labels = ";".join(str(int(y)) for y in bag.instance_labels)
    row = (
        bag.bag_id,
        bag.label,
        bag.domain,
        bag.size,
        bag.window,
        _format_origins(bag.positions),
        instance_labels,
    )
    write_csv_rows(directory / BAG_CSV_FILENAME, BAG_CSV_HEADER, [row])
    return directory


def load_bag(directory):
    """Read a bag written by save_bag."""
    directory = Path(directory)
    rows = read_csv_rows(
        require_artifact(directory / BAG_CSV_FILENAME, "bag manifest"),
        expected_header=BAG_CSV_HEADER,
    )
    row = rows[0]
    size = int(row["K"])
    instances = np.stack(
        [
            _read_patch(require_artifact(directory / _instance_filename(i), "bag instance"))
            for i in range(size)
        ],
    )
    instance_labels = None
    if row["instance_labels"]:
        instance_labels = [int(y) for y in row["instance_labels"].split(";")]
    return InstanceBag(
        bag_id=row["bag_id"],
        instances=instances,
        label=int(row["label"]),
        domain=int(row["domain"]),
        positions=_parse_origins(row["origins"]),
        window=int(row["M"]),
        instance_labels=instance_labels,
    )


def write_bag_cache(split_bag_pairs, root):
    """
    Save every bag and the bags.csv index.

    split_bag_pairs is an iterable of (split, bag), consumed one bag at a time.
    """
    root = ensure_directory(root)
    index_rows = []
    for split, bag in split_bag_pairs:
        relative = Path(split) / bag.bag_id
        save_bag(bag, root / relative)
        index_rows.append((bag.bag_id, bag.label, bag.domain, split, relative.as_posix()))
    write_csv_rows(root / BAG_INDEX_FILENAME, BAG_INDEX_HEADER, index_rows)
    logging.info(f"Cached {len(index_rows)} bags in {root}.")
    return root / BAG_INDEX_FILENAME


class CachedBagSequence(Sequence):
    """
    The bags of one split, read from the cache on each access.

    Keeps memory flat however large K gets; labels and domains are served from the
    index without touching the patches.
    """

    def __init__(self, root, rows):  # noqa: D107
        self.root = Path(root)
        self.rows = list(rows)

    def __len__(self):  # noqa: D105
        return len(self.rows)

    def __getitem__(self, index):  # noqa: D105
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        return load_bag(self.root / self.rows[index]["path"])

    @property
    def labels(self):  # noqa: D102
        return [int(row["label"]) for row in self.rows]

    @property
    def domains(self):  # noqa: D102
        return [int(row["domain"]) for row in self.rows]


def read_bag_cache(root, splits=None):
    """Open a bag cache as {split: CachedBagSequence} in index order."""
    root = Path(root)
    index = read_csv_rows(
        require_artifact(root / BAG_INDEX_FILENAME, "bag cache index (run `bags` first)"),
        expected_header=BAG_INDEX_HEADER,
    )
    grouped = {}
    for row in index:
        if splits is not None and row["split"] not in splits:
            continue
        grouped.setdefault(row["split"], []).append(row)
    return {split: CachedBagSequence(root, rows) for split, rows in grouped.items()}
