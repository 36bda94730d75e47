# -*- coding: utf-8 -*-
"""Evaluate a checkpoint on one split of a bag cache."""

# Project
from bag_builder.cache import read_bag_cache
from common.exceptions import InputDomainError
from synthdata.manifest import SPLIT_NAMES
from train_eval.evaluation import evaluate_checkpoint
from train_eval.evaluation import write_metrics
from train_eval.management.pipeline import PipelineCommand
from train_eval.management.pipeline import format_metrics
from train_eval.management.pipeline import roc_figure_curves
from train_eval.plots import plot_roc_curves
from train_eval.reports import attention_reports
from train_eval.reports import summarize_attention
from train_eval.reports import write_attention_csv


class Command(PipelineCommand):  # noqa: D101
    help = "Metrics JSON, ROC CSVs and an ROC figure for a checkpoint on one split."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--checkpoint", required=True)
        parser.add_argument("--bags", required=True, help="bag cache directory")
        parser.add_argument("--split", choices=SPLIT_NAMES, default="test")
        parser.add_argument(
            "--attention",
            action="store_true",
            help="also write the per-instance attention table (needs instance labels)",
        )

    def run(self, config, out_dir, options):  # noqa: D102
        bags = read_bag_cache(options["bags"], splits=[options["split"]]).get(options["split"])
        if not bags:
            raise InputDomainError(f"Split {options['split']} of {options['bags']} is empty.")
        model, reports = evaluate_checkpoint(options["checkpoint"], bags)
        write_metrics(reports, out_dir, extra={"split": options["split"]})
        plot_roc_curves(roc_figure_curves(reports), out_dir / "roc.svg")
        summary = format_metrics(reports)

        if options["attention"]:
            rows = attention_reports(model, bags)
            write_attention_csv(rows, out_dir / "attention.csv")
            for head, result in summarize_attention(rows).items():
                summary += (
                    f"\n{head} mean attention on positive instances {result.mean_positive:.4f}, "
                    f"on negative instances {result.mean_negative:.4f}"
                )
        return summary
