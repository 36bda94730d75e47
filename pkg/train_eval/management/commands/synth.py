# -*- coding: utf-8 -*-
"""Generate a synthetic fundus dataset with simulated reader gaze."""

# Project
from common.utils import file_checksum
from synthdata.constants import SPLIT_COUNT_PRESETS
from synthdata.manifest import gen_dataset
from synthdata.serializers import synth_config_from_dict
from train_eval.management.pipeline import PipelineCommand


def manifest_summary(manifest):
    """Counts per split and class, counts per domain and the manifest checksum."""
    lines = []
    for split, (negatives, positives) in manifest.class_counts().items():
        lines.append(f"{split}: {negatives} negative / {positives} positive")
    domains = ", ".join(f"{domain}: {n}" for domain, n in manifest.domain_counts().items())
    lines.append(f"domains ({len(manifest.domain_counts())}): {domains}")
    lines.append(f"manifest sha256: {file_checksum(manifest.path)}")
    return "\n".join(lines)


class Command(PipelineCommand):  # noqa: D101
    help = "Generate images, fixations, gaze maps and a manifest under --out."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--preset", choices=sorted(SPLIT_COUNT_PRESETS), default=None)

    def run(self, config, out_dir, options):  # noqa: D102
        synth_config = synth_config_from_dict(
            config,
            preset=options["preset"],
            seed=options["seed"],
        )
        manifest = gen_dataset(synth_config, out_dir)
        return manifest_summary(manifest)
