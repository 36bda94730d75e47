# -*- coding: utf-8 -*-
"""Dataset manifests and the on-disk synthetic dataset writer."""

# Standard Library
import logging
from collections import Counter
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Dict
from typing import List
from typing import Tuple

# 3rd-party
import numpy as np
from PIL import Image

# Project
from common.config import write_key_value_file
from common.constants import DATASET_SPLITS
from common.constants import IMAGE_SIZE
from common.exceptions import InputDomainError
from common.utils import derive_seed
from common.utils import ensure_directory
from common.utils import read_csv_rows
from common.utils import require_artifact
from common.utils import write_csv_rows
from gaze_render.constants import DEFAULT_SIGMA
from gaze_render.files import save_gaze_map_image
from gaze_render.files import write_fixations_csv
from gaze_render.rendering import GaussianSpec
from gaze_render.rendering import quantize_gaze_map
from gaze_render.rendering import render_gaze_map

# Local
from .constants import CONFIG_ECHO_FILENAME
from .constants import DEFAULT_ATTEND_PROB
from .constants import DEFAULT_DOMAIN_COUNT
from .constants import DEFAULT_FIXATION_COUNT
from .constants import LESION_CSV_HEADER
from .constants import MANIFEST_FILENAME
from .constants import MANIFEST_HEADER
from .constants import SPLIT_COUNT_PRESETS
from .generator import DomainStyle
from .generator import FundusImage
from .generator import LesionSpec
from .generator import gen_fixations
from .generator import gen_image

SPLIT_NAMES = [split for split, _ in DATASET_SPLITS]


@dataclass(frozen=True)
class ManifestEntry:
    """One image of the dataset; paths are relative to the manifest directory."""

    image: str
    gaze: str
    label: int
    domain: int
    split: str

    @property
    def entry_id(self):
        """Identifier shared by the image, its gaze map and its sidecars."""
        return Path(self.image).stem

    def fixations_path(self, root):  # noqa: D102
        return Path(root) / "fixations" / f"{self.entry_id}.csv"

    def lesions_path(self, root):  # noqa: D102
        return Path(root) / "lesions" / f"{self.entry_id}.csv"


@dataclass
class DatasetManifest:
    """All entries of a dataset plus the directory their paths are relative to."""

    root: Path
    entries: List[ManifestEntry] = field(default_factory=list)

    def split(self, name):
        """Entries of one split, in manifest order."""
        return [entry for entry in self.entries if entry.split == name]

    def class_counts(self):
        """{split: (negatives, positives)}."""
        counts = Counter((entry.split, entry.label) for entry in self.entries)
        return {split: (counts[(split, 0)], counts[(split, 1)]) for split in SPLIT_NAMES}

    def domain_counts(self):
        """{domain: count}."""
        return dict(sorted(Counter(entry.domain for entry in self.entries).items()))

    @property
    def path(self):  # noqa: D102
        return Path(self.root) / MANIFEST_FILENAME

    def write(self):
        """Write manifest.csv into root."""
        rows = [(e.image, e.gaze, e.label, e.domain, e.split) for e in self.entries]
        return write_csv_rows(self.path, MANIFEST_HEADER, rows)

    @classmethod
    def read(cls, path):
        """Read a manifest.csv (or the directory holding one)."""
        path = Path(path)
        if path.is_dir():
            path = path / MANIFEST_FILENAME
        path = require_artifact(path, "dataset manifest")
        entries = []
        for row in read_csv_rows(path, expected_header=MANIFEST_HEADER):
            if row["split"] not in SPLIT_NAMES:
                raise InputDomainError(f"{path} has an unknown split {row['split']!r}.")
            entries.append(
                ManifestEntry(
                    image=row["image"],
                    gaze=row["gaze"],
                    label=int(row["label"]),
                    domain=int(row["domain"]),
                    split=row["split"],
                ),
            )
        return cls(root=path.parent, entries=entries)


@dataclass(frozen=True)
class SynthConfig:
    """Everything gen_dataset needs; counts are (negatives, positives) per split."""

    counts: Dict[str, Tuple[int, int]] = field(
        default_factory=lambda: dict(SPLIT_COUNT_PRESETS["desk"]),
    )
    n_domains: int = DEFAULT_DOMAIN_COUNT
    attend_prob: float = DEFAULT_ATTEND_PROB
    n_fix: int = DEFAULT_FIXATION_COUNT
    sigma: float = DEFAULT_SIGMA
    size: int = IMAGE_SIZE
    seed: int = 0
    preset: str = "desk"

    def __post_init__(self):  # noqa: D105
        if self.n_domains < 1:
            raise InputDomainError(f"At least one domain is needed, got {self.n_domains}.")
        for split in SPLIT_NAMES:
            if split not in self.counts or min(self.counts[split]) < 1:
                raise InputDomainError(
                    f"Split '{split}' needs at least one image per class, got "
                    f"{self.counts.get(split)}.",
                )

    @classmethod
    def from_preset(cls, preset, **overrides):
        """Config with a preset's split counts and any overrides."""
        return cls(counts=dict(SPLIT_COUNT_PRESETS[preset]), preset=preset, **overrides)

    def as_key_values(self):
        """Flat dict in the config file vocabulary."""
        values = {
            "preset": self.preset,
            "domains": self.n_domains,
            "attend_prob": self.attend_prob,
            "n_fix": self.n_fix,
            "sigma": self.sigma,
            "size": self.size,
            "seed": self.seed,
        }
        for split in SPLIT_NAMES:
            values[f"{split}_negative"], values[f"{split}_positive"] = self.counts[split]
        return values


def save_fundus_image(image, path):
    """Write a FundusImage as an 8-bit RGB PNG."""
    path = Path(path)
    ensure_directory(path.parent)
    pixels = np.round(np.clip(image.values, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(pixels).save(path)
    return path


def load_fundus_image(path):
    """Read an RGB image back; the field of view is recomputed from its size."""
    path = require_artifact(path, "fundus image")
    with Image.open(path) as image:
        pixels = np.array(image.convert("RGB"), dtype=np.uint8)
    height, width, _ = pixels.shape
    if height != width:
        raise InputDomainError(f"{path} is {width}x{height}; fundus images must be square.")
    return FundusImage(
        values=pixels.astype(np.float64) / 255.0,
        mask=FundusImage.circular_mask(width),
        disc_center=((width - 1) / 2.0, (height - 1) / 2.0),
        disc_radius=0.0,
    )


def write_lesions_csv(lesions, path):  # noqa: D103
    rows = [(les.center[0], les.center[1], les.radius, les.contrast) for les in lesions]
    return write_csv_rows(path, LESION_CSV_HEADER, rows)


def read_lesions_csv(path):  # noqa: D103
    return [
        LesionSpec(
            center=(float(row["x"]), float(row["y"])),
            radius=float(row["radius"]),
            contrast=float(row["contrast"]),
        )
        for row in read_csv_rows(path, expected_header=LESION_CSV_HEADER)
    ]


def _labelled_slots(config):
    """(split, label) for every image, splits in order, classes interleaved."""
    slots = []
    for split in SPLIT_NAMES:
        negatives, positives = config.counts[split]
        labels = [0] * negatives + [1] * positives
        rng = np.random.default_rng(derive_seed(config.seed, SPLIT_NAMES.index(split)))
        order = rng.permutation(len(labels))
        slots.extend((split, labels[i]) for i in order)
    return slots


def gen_dataset(config, out_dir):
    """
    Generate images, fixations, gaze maps and a manifest under out_dir.

    Domains are assigned round-robin over images. Returns the written DatasetManifest.
    """
    root = ensure_directory(out_dir)
    spec = GaussianSpec(config.sigma)
    manifest = DatasetManifest(root=root)

    for index, (split, label) in enumerate(_labelled_slots(config)):
        entry_id = f"{split}_{index:05d}"
        domain = index % config.n_domains
        style = DomainStyle.for_domain(domain, config.n_domains)
        image, lesions = gen_image(label, style, derive_seed(config.seed, index), config.size)
        fixations = gen_fixations(
            image,
            lesions,
            config.n_fix,
            config.attend_prob,
            derive_seed(config.seed, index, 1),
        )
        gaze_map = quantize_gaze_map(render_gaze_map(fixations, image.width, image.height, spec))

        entry = ManifestEntry(
            image=f"images/{entry_id}.png",
            gaze=f"gaze/{entry_id}.png",
            label=label,
            domain=domain,
            split=split,
        )
        save_fundus_image(image, root / entry.image)
        save_gaze_map_image(gaze_map, root / entry.gaze)
        write_fixations_csv(fixations, entry.fixations_path(root))
        write_lesions_csv(lesions, entry.lesions_path(root))
        manifest.entries.append(entry)

    manifest.write()
    write_key_value_file(root / CONFIG_ECHO_FILENAME, config.as_key_values())

    log_info = (
        f"Generated {len(manifest.entries)} synthetic images in {root} "
        f"({config.n_domains} domains, preset {config.preset})."
    )
    logging.info(log_info)
    return manifest
