# -*- coding: utf-8 -*-
"""Core code used across multiple apps."""

# Standard Library
import csv
import hashlib
from pathlib import Path

# 3rd-party
import numpy as np

# Project
from common.exceptions import InputDomainError
from common.exceptions import MissingArtifactError


def derive_seed(*parts):
    """
    Derive a 32-bit seed from a tuple of integers.

    Used wherever a per-epoch or per-item generator has to be drawn from a base seed, so
    no global random state is ever consulted.
    """
    return int(np.random.SeedSequence([int(part) for part in parts]).generate_state(1)[0])


def ensure_directory(path):
    """Create a directory (and parents) if absent and return it as a Path."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def require_artifact(path, description):
    """Raise MissingArtifactError naming the artifact if the path does not exist."""
    path = Path(path)
    if not path.exists():
        raise MissingArtifactError(f"Missing {description}: {path} does not exist.")
    return path


def write_csv_rows(path, header, rows):
    """Write a header and rows to a CSV file with fixed line endings."""
    path = Path(path)
    ensure_directory(path.parent)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    return path


def append_csv_row(path, header, row):
    """Append a row to a CSV file, writing the header first if the file is new."""
    path = Path(path)
    is_new = not path.exists()
    ensure_directory(path.parent)
    with open(path, "a", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        if is_new:
            writer.writerow(header)
        writer.writerow(row)
    return path


def read_csv_rows(path, expected_header=None):
    """
    Read a CSV file into a list of dicts keyed by header.

    If expected_header is given the file header must match it exactly.
    """
    path = require_artifact(path, "CSV file")
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if expected_header is not None and reader.fieldnames != list(expected_header):
            raise InputDomainError(
                f"{path} has header {reader.fieldnames}, expected {list(expected_header)}.",
            )
        return list(reader)


def file_checksum(path):
    """Return the sha256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def format_float(value):
    """Format a float for CSV output so repeated runs write identical bytes."""
    return repr(float(value))
