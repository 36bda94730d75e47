# -*- coding: utf-8 -*-
"""Train and evaluate once per bag size K."""

# Project
from bag_builder.constants import INSTANCE_SELECTIONS
from common.exceptions import ConfigurationError
from synthdata.manifest import DatasetManifest
from train_eval.constants import K_SWEEP
from train_eval.constants import K_SWEEP_FILENAME
from train_eval.experiments import sweep_k
from train_eval.management.pipeline import PipelineCommand
from train_eval.management.pipeline import dataset_preset
from train_eval.management.pipeline import integer_list
from train_eval.serializers import train_config_from_dict


class Command(PipelineCommand):  # noqa: D101
    help = (
        "One row per K and selection method, appended to k_sweep.csv as it finishes; "
        "bags are cached under --out/bags."
    )

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--data", required=True, help="dataset directory")
        parser.add_argument("--ks", type=integer_list, default=list(K_SWEEP))
        parser.add_argument(
            "--selections",
            default="gaze",
            help="comma separated selection methods, e.g. gaze,uniform",
        )

    def run(self, config, out_dir, options):  # noqa: D102
        manifest = DatasetManifest.read(options["data"])
        base_config = train_config_from_dict(
            config,
            paper_scale=options["paper_scale"],
            seed=options["seed"],
            preset=None if "preset" in config else dataset_preset(manifest.root),
        )
        selections = [part.strip() for part in options["selections"].split(",") if part.strip()]
        unknown = sorted(set(selections) - {name for name, _ in INSTANCE_SELECTIONS})
        if unknown or not selections:
            raise ConfigurationError(f"Unknown or missing selection methods: {unknown}.")
        path = out_dir / K_SWEEP_FILENAME
        rows = sweep_k(
            manifest,
            base_config,
            options["ks"],
            out_dir / "bags",
            selections,
            table_path=path,
        )
        lines = [
            f"{row.method} K={row.config.k}: AUC {row.reported()[0][1].auc:.4f}" for row in rows
        ]
        return "\n".join(lines + [f"table: {path}"])
