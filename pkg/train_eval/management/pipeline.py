# -*- coding: utf-8 -*-
"""Base class shared by the pipeline management commands."""

# Standard Library
import argparse
import logging
from pathlib import Path

# Django
from django.core.management.base import BaseCommand
from django.core.management.base import CommandError

# Project
from common.config import read_key_value_file
from common.constants import CLASSIFIER_HEADS
from common.exceptions import ConfigurationError
from common.exceptions import DivergenceError
from common.exceptions import ImplementationError
from common.exceptions import InputDomainError
from common.exceptions import MissingArtifactError
from common.utils import ensure_directory
from synthdata.constants import CONFIG_ECHO_FILENAME

HEAD_NAMES = dict(CLASSIFIER_HEADS)

PIPELINE_ERRORS = (
    ConfigurationError,
    DivergenceError,
    ImplementationError,
    InputDomainError,
    MissingArtifactError,
)


def integer_list(text):
    """argparse type for comma separated integers, e.g. `10,20,30`."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated list of integers.")


class PipelineCommand(BaseCommand):
    """
    Adds the global flags and turns pipeline errors into one-line CommandErrors.

    Subclasses implement add_pipeline_arguments and run(config, out_dir, options), where
    config is the raw key-value dict of --config (empty without one).
    """

    def add_arguments(self, parser):  # noqa: D102
        parser.add_argument("--config", default=None, help="key = value config file")
        parser.add_argument("--out", required=True, help="output directory")
        parser.add_argument("--seed", type=int, default=None, help="overrides the config seed")
        parser.add_argument(
            "--paper-scale",
            action="store_true",
            help="100 epochs, learning rate 1e-4 and the resnet18 encoder",
        )
        self.add_pipeline_arguments(parser)

    def add_pipeline_arguments(self, parser):  # noqa: D102
        pass

    def run(self, config, out_dir, options):  # noqa: D102
        raise NotImplementedError("This needs to be set by the concrete subclass.")

    def handle(self, *args, **options):  # noqa: D102
        try:
            config = read_key_value_file(options["config"]) if options["config"] else {}
            out_dir = ensure_directory(options["out"])
            summary = self.run(config, out_dir, options)
        except PIPELINE_ERRORS as e:
            logging.error(f"{type(e).__name__}: {e}")
            raise CommandError(f"{type(e).__name__}: {e}")
        if summary:
            self.stdout.write(summary)

    @staticmethod
    def path_option(options, name, description):
        """A required path option, as a Path."""
        value = options.get(name)
        if not value:
            raise ConfigurationError(f"--{name.replace('_', '-')} ({description}) is required.")
        return Path(value)


def dataset_preset(root):
    """The preset recorded in a generated dataset's config echo, or None."""
    echo = Path(root) / CONFIG_ECHO_FILENAME
    if not echo.exists():
        return None
    return read_key_value_file(echo).get("preset")


def format_metrics(reports):
    """One line per head."""
    return "\n".join(
        f"{HEAD_NAMES[head]}: accuracy {report.accuracy:.4f}, precision {report.precision:.4f}, "
        f"recall {report.recall:.4f}, F1 {report.f1:.4f}, AUC {report.auc:.4f}"
        for head, report in sorted(reports.items())
    )


def roc_figure_curves(reports, prefix=""):
    """ROC curves of each head labelled with their AUC."""
    return {
        f"{prefix}{HEAD_NAMES[head]} (AUC {report.auc:.3f})": report.roc
        for head, report in sorted(reports.items())
    }
