# -*- coding: utf-8 -*-
"""Gaze-guided against uniform instance generation over several seeds."""

# Project
from common.exceptions import ConfigurationError
from synthdata.manifest import DatasetManifest
from train_eval.constants import COMPARISON_SEEDS
from train_eval.experiments import compare_instance_generation
from train_eval.experiments import mean_auc
from train_eval.experiments import write_comparison_csv
from train_eval.management.pipeline import PipelineCommand
from train_eval.management.pipeline import dataset_preset
from train_eval.management.pipeline import integer_list
from train_eval.management.pipeline import roc_figure_curves
from train_eval.plots import plot_roc_curves
from train_eval.serializers import train_config_from_dict


class Command(PipelineCommand):
    """
    --seeds lists the run seeds; a lone --seed is a one-seed list.

    Without either the comparison runs over seeds 0, 1 and 2.
    """

    help = "Train on gaze-selected and on uniformly selected bags for every seed."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--data", required=True, help="dataset directory")
        parser.add_argument("--seeds", type=integer_list, default=None)

    @staticmethod
    def run_seeds(options):
        """The seeds to compare over, from --seeds or --seed."""
        if options["seeds"] is not None and options["seed"] is not None:
            raise ConfigurationError("Pass either --seed or --seeds to compare-gen, not both.")
        if options["seeds"] is not None:
            if not options["seeds"]:
                raise ConfigurationError("--seeds needs at least one seed.")
            return options["seeds"]
        if options["seed"] is not None:
            return [options["seed"]]
        return list(COMPARISON_SEEDS)

    def run(self, config, out_dir, options):  # noqa: D102
        seeds = self.run_seeds(options)
        manifest = DatasetManifest.read(options["data"])
        base_config = train_config_from_dict(
            config,
            paper_scale=options["paper_scale"],
            preset=None if "preset" in config else dataset_preset(manifest.root),
        )
        rows = compare_instance_generation(
            manifest,
            base_config,
            seeds,
            out_dir / "bags",
        )
        path = write_comparison_csv(rows, out_dir / "compare_gen.csv")

        first_seed = seeds[0]
        curves = {}
        for row in rows:
            if row.config.data_seed == first_seed:
                reports = dict(row.reported())
                curves.update(roc_figure_curves(reports, prefix=f"{row.method} "))
        plot_roc_curves(curves, out_dir / "compare_gen_roc.svg")
        return "\n".join(
            [
                f"gaze mean AUC {mean_auc(rows, 'gaze'):.4f}",
                f"uniform mean AUC {mean_auc(rows, 'uniform'):.4f}",
                f"table: {path}",
            ],
        )
