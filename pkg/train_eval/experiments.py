# -*- coding: utf-8 -*-
"""
Experiment runners built on train and evaluate.

Each runner trains one model per row with shared seeds and evaluates it on the test
split, so rows differ only in what the row varies.
"""

# Standard Library
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict

# Project
from bag_builder.cache import read_bag_cache
from bag_builder.cache import write_bag_cache
from bag_builder.constants import BAG_INDEX_FILENAME
from bag_builder.dataset import iter_manifest_bags
from bag_builder.windows import window_count
from common.exceptions import InputDomainError
from common.utils import append_csv_row
from common.utils import write_csv_rows
from gaze_render.files import load_gaze_map_image

# Local
from .constants import ABLATION_GRIDS
from .constants import ABLATION_HEADER
from .constants import COMPARISON_HEADER
from .constants import K_SWEEP_HEADER
from .constants import STRATEGY_FLAGS
from .evaluation import evaluate
from .training import StrategyFlags
from .training import train


@dataclass
class ExperimentRow:
    """One trained-and-evaluated configuration."""

    method: str
    config: object
    metrics: Dict[str, object]
    heads: list

    def reported(self):
        """(head, MetricsReport) pairs for the heads the run reports."""
        return [(head, self.metrics[head]) for head in self.heads]


def train_and_evaluate(split_bags, config, method, out_dir=None):
    """Train on train/val and evaluate the best model on test."""
    if len(split_bags.get("test") or []) == 0:
        raise InputDomainError("Experiments need a non-empty test split.")
    record = train(split_bags, config, out_dir=out_dir)
    metrics = evaluate(record.model, split_bags["test"])
    record.test_metrics = metrics
    return ExperimentRow(method=method, config=config, metrics=metrics, heads=record.reported_heads)


def prepare_bags(manifest, config, cache_root):
    """
    A bag cache for the config's K, M and selection, built once under cache_root.

    Uniform caches are kept per seed since the seed picks their windows.

    Returns {split: bags}.
    """
    name = f"{config.selection}_k{config.k}_m{config.window}"
    if config.selection == "uniform":
        name = f"{name}_s{config.data_seed}"
    directory = Path(cache_root) / name
    if not (directory / BAG_INDEX_FILENAME).exists():
        write_bag_cache(
            iter_manifest_bags(
                manifest,
                k=config.k,
                window=config.window,
                selection=config.selection,
                seed=config.data_seed,
            ),
            directory,
        )
    return read_bag_cache(directory)


def ablation_flags(grid):
    """Validate every row of a grid before any training starts."""
    if isinstance(grid, str):
        if grid not in ABLATION_GRIDS:
            raise InputDomainError(f"Unknown ablation grid {grid!r}; use {sorted(ABLATION_GRIDS)}.")
        grid = ABLATION_GRIDS[grid]
    return [StrategyFlags(**row) for row in grid]


def run_ablation(split_bags, base_config, grid="strategy", out_dir=None):
    """One row per flag combination of the grid, all with base_config's seeds."""
    rows = []
    for flags in ablation_flags(grid):
        run_dir = None if out_dir is None else Path(out_dir) / flags.label
        logging.info(f"Ablation row {flags.label}.")
        config = base_config.replace(flags=flags)
        rows.append(train_and_evaluate(split_bags, config, flags.label, run_dir))
    return rows


def write_ablation_csv(rows, path):  # noqa: D103
    lines = []
    for row in rows:
        flags = row.config.flags
        switches = [int(getattr(flags, key)) for key, _ in STRATEGY_FLAGS]
        for head, report in row.reported():
            lines.append([row.method, *switches, head, *report.metric_cells()])
    return write_csv_rows(path, ABLATION_HEADER, lines)


def dataset_image_shape(manifest):
    """(height, width) of a dataset's images, read off its first gaze map."""
    if not manifest.entries:
        raise InputDomainError(f"{manifest.path} lists no images.")
    gaze_map = load_gaze_map_image(Path(manifest.root) / manifest.entries[0].gaze)
    return gaze_map.height, gaze_map.width


def check_bag_sizes(manifest, window, ks):
    """
    Refuse every K the dataset's window grid cannot fill, before anything is trained.

    Returns the number of windows per image.
    """
    height, width = dataset_image_shape(manifest)
    available = window_count(height, width, window)
    refused = sorted(k for k in ks if k < 1 or k > available)
    if refused:
        raise InputDomainError(
            f"K={refused} cannot be drawn from the {available} windows that M={window} gives on "
            f"{width}x{height} images. Keep --ks between 1 and {available}, lower the config "
            f"`window` (the M=100 presets desk-amd and amd) or regenerate the data with a "
            f"larger `size` (M=200 needs 900 pixels for K=50).",
        )
    return available


def k_sweep_line(row):
    """The K-sweep table line of a row; only the first reported head is kept."""
    head, report = row.reported()[0]
    return [row.method, row.config.k, head, *report.metric_cells()]


def sweep_k(manifest, base_config, ks, cache_root, selections=("gaze",), table_path=None):
    """
    One row per (selection, K).

    With table_path each row is appended to the K-sweep table as soon as it is evaluated,
    so a failure late in the sweep keeps the rows before it.
    """
    check_bag_sizes(manifest, base_config.window, ks)
    if table_path is not None:
        write_csv_rows(table_path, K_SWEEP_HEADER, [])
    rows = []
    for selection in selections:
        for k in ks:
            config = base_config.replace(k=k, selection=selection)
            logging.info(f"K sweep: {selection} selection, K={k}.")
            split_bags = prepare_bags(manifest, config, cache_root)
            row = train_and_evaluate(split_bags, config, selection)
            rows.append(row)
            if table_path is not None:
                append_csv_row(table_path, K_SWEEP_HEADER, k_sweep_line(row))
    return rows


def compare_instance_generation(manifest, base_config, seeds, cache_root):
    """
    Gaze-guided against uniform window selection, once per seed.

    Uniform bags ignore the gaze map and draw K grid windows with the run's seed.
    """
    rows = []
    for seed in seeds:
        for selection in ("gaze", "uniform"):
            config = base_config.with_seed(seed).replace(selection=selection)
            logging.info(f"Instance generation comparison: {selection}, seed {seed}.")
            split_bags = prepare_bags(manifest, config, cache_root)
            rows.append(train_and_evaluate(split_bags, config, selection))
    return rows


def write_comparison_csv(rows, path):  # noqa: D103
    lines = []
    for row in rows:
        for head, report in row.reported():
            lines.append([row.method, row.config.data_seed, head, *report.metric_cells()])
    return write_csv_rows(path, COMPARISON_HEADER, lines)


def mean_auc(rows, method, head="h1"):
    """Mean test AUC of one method's rows."""
    values = [row.metrics[head].auc for row in rows if row.method == method]
    if not values:
        raise InputDomainError(f"No rows for method {method!r}.")
    return sum(values) / len(values)
