# -*- coding: utf-8 -*-
"""Train and evaluate every row of an ablation grid."""

# Project
from bag_builder.cache import read_bag_cache
from train_eval.constants import ABLATION_GRIDS
from train_eval.experiments import run_ablation
from train_eval.experiments import write_ablation_csv
from train_eval.management.pipeline import PipelineCommand
from train_eval.serializers import train_config_from_dict


class Command(PipelineCommand):
    """
    The strategy grid varies DN, CL and CA with SA and DA on.

    The module grid varies SA and DA with DN, CL and CA on.
    """

    help = "One train and evaluate per flag combination, all with the same seeds."

    def add_pipeline_arguments(self, parser):  # noqa: D102
        parser.add_argument("--bags", required=True, help="bag cache directory")
        parser.add_argument("--grid", choices=sorted(ABLATION_GRIDS), default="strategy")

    def run(self, config, out_dir, options):  # noqa: D102
        base_config = train_config_from_dict(
            config,
            paper_scale=options["paper_scale"],
            seed=options["seed"],
        )
        rows = run_ablation(
            read_bag_cache(options["bags"]),
            base_config,
            grid=options["grid"],
            out_dir=out_dir / "runs",
        )
        path = write_ablation_csv(rows, out_dir / f"ablation_{options['grid']}.csv")
        lines = [
            f"{row.method} {head}: F1 {report.f1:.4f}, AUC {report.auc:.4f}"
            for row in rows
            for head, report in row.reported()
        ]
        return "\n".join(lines + [f"table: {path}"])
