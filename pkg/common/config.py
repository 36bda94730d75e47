# -*- coding: utf-8 -*-
"""Plain-text key-value config files."""

# Standard Library
from pathlib import Path

# Project
from common.exceptions import ConfigurationError
from common.utils import ensure_directory
from common.utils import require_artifact


def read_key_value_file(path):
    """
    Read a `key = value` config file into a dict of strings.

    Blank lines and lines starting with `#` are skipped. A key may only be set once.
    """
    path = require_artifact(path, "config file")
    config = {}
    with open(path) as f:
        for line_number, raw_line in enumerate(f, start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigurationError(
                    f"{path}:{line_number} is not a 'key = value' line: {line!r}.",
                )
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ConfigurationError(f"{path}:{line_number} has an empty key.")
            if key in config:
                raise ConfigurationError(f"{path}:{line_number} sets '{key}' a second time.")
            config[key] = value
    return config


def write_key_value_file(path, config):
    """Write a dict as a sorted `key = value` file."""
    path = Path(path)
    ensure_directory(path.parent)
    with open(path, "w") as f:
        for key in sorted(config):
            f.write(f"{key} = {config[key]}\n")
    return path
