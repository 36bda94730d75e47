# -*- coding: utf-8 -*-
"""Build and cache the bags of a dataset."""

# Project
from bag_builder.cache import read_bag_cache
from bag_builder.cache import write_bag_cache
from bag_builder.constants import DEFAULT_BAG_SIZE
from bag_builder.constants import INSTANCE_SELECTIONS
from bag_builder.dataset import iter_manifest_bags
from synthdata.constants import PRESET_WINDOW_SIZES
from synthdata.manifest import DatasetManifest
from train_eval.management.pipeline import PipelineCommand
from train_eval.management.pipeline import dataset_preset


class Command(PipelineCommand):
    """
    K defaults to 10; M defaults to the window size of the dataset's preset.

    --seed only matters for uniform selection.
    """

    help = "Select K windows per image and cache the resulting bags under --out."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--data", required=True, help="dataset directory")
        parser.add_argument("--k", type=int, default=DEFAULT_BAG_SIZE)
        parser.add_argument("--window", type=int, default=None)
        parser.add_argument(
            "--selection",
            choices=[selection for selection, _ in INSTANCE_SELECTIONS],
            default="gaze",
        )

    def run(self, config, out_dir, options):  # noqa: D102
        manifest = DatasetManifest.read(options["data"])
        window = options["window"] or PRESET_WINDOW_SIZES[dataset_preset(manifest.root) or "desk"]
        index_path = write_bag_cache(
            iter_manifest_bags(
                manifest,
                k=options["k"],
                window=window,
                selection=options["selection"],
                seed=options["seed"] or 0,
            ),
            out_dir,
        )
        cached = sum(len(bags) for bags in read_bag_cache(out_dir).values())
        return (
            f"Cached {cached} bags for {len(manifest.entries)} manifest entries "
            f"(K={options['k']}, M={window}, {options['selection']} selection).\n"
            f"index: {index_path}"
        )
