# -*- coding: utf-8 -*-
"""Draw ROC CSVs into one SVG figure."""

# Standard Library
from pathlib import Path

# Project
from common.exceptions import ConfigurationError
from common.utils import require_artifact
from train_eval.evaluation import read_roc_csv
from train_eval.management.pipeline import PipelineCommand
from train_eval.plots import plot_roc_curves


class Command(PipelineCommand):  # noqa: D101
    help = "One curve per ROC CSV (fpr,tpr,threshold); labels default to the file names."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--roc", nargs="+", required=True, help="ROC CSV files")
        parser.add_argument("--labels", nargs="+", default=None)
        parser.add_argument("--name", default="roc.svg", help="figure file name in --out")

    def run(self, config, out_dir, options):  # noqa: D102
        paths = [Path(path) for path in options["roc"]]
        labels = options["labels"] or [path.stem for path in paths]
        if len(labels) != len(paths):
            raise ConfigurationError(f"{len(paths)} ROC files but {len(labels)} labels.")
        curves = {
            label: read_roc_csv(require_artifact(path, "ROC CSV"))
            for label, path in zip(labels, paths)
        }
        figure = plot_roc_curves(curves, out_dir / options["name"])
        return f"figure: {figure}"
