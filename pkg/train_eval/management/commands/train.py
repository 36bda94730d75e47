# -*- coding: utf-8 -*-
"""Train a model on a bag cache, register the run and evaluate it on the test split."""

# Project
from bag_builder.cache import read_bag_cache
from common.config import write_key_value_file
from common.exceptions import DivergenceError
from common.exceptions import InputDomainError
from train_eval.constants import CONFIG_ECHO_FILENAME
from train_eval.evaluation import evaluate
from train_eval.evaluation import write_metrics
from train_eval.management.pipeline import PipelineCommand
from train_eval.management.pipeline import format_metrics
from train_eval.management.pipeline import roc_figure_curves
from train_eval.models import TrainingRun
from train_eval.plots import plot_roc_curves
from train_eval.plots import plot_stability_curves
from train_eval.serializers import train_config_from_dict
from train_eval.serializers import train_config_key_values
from train_eval.training import train


class Command(PipelineCommand):  # noqa: D101
    help = "Train on the train split, pick the best epoch on val and evaluate on test."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--bags", required=True, help="bag cache directory")
        parser.add_argument("--name", default="run", help="name in the run registry")

    def run(self, config, out_dir, options):  # noqa: D102
        train_config = train_config_from_dict(
            config,
            paper_scale=options["paper_scale"],
            seed=options["seed"],
        )
        split_bags = read_bag_cache(options["bags"])
        if len(split_bags.get("test") or []) == 0:
            raise InputDomainError(f"{options['bags']} has no test bags to evaluate on.")
        write_key_value_file(out_dir / CONFIG_ECHO_FILENAME, train_config_key_values(train_config))

        run = TrainingRun.start(options["name"], train_config, out_dir)
        try:
            record = train(split_bags, train_config, out_dir=out_dir, on_epoch=run.record_epoch)
        except DivergenceError as e:
            run.mark_diverged(e.epoch)
            raise

        reports = evaluate(record.model, split_bags["test"])
        reports = {head: reports[head] for head in record.reported_heads}
        write_metrics(
            reports,
            out_dir,
            extra={
                "best_epoch": record.best_epoch,
                "best_head": record.best_head,
                "best_val_accuracy": record.best_val_accuracy,
                "strategy": train_config.flags.label,
            },
        )
        plot_stability_curves(record.epochs, out_dir / "stability.svg")
        plot_roc_curves(roc_figure_curves(reports), out_dir / "roc.svg")
        run.finish(record, reports)
        return (
            f"Run {run.pk} ({train_config.flags.label}): best epoch {record.best_epoch}, "
            f"validation accuracy {record.best_val_accuracy:.4f}.\n{format_metrics(reports)}"
        )
