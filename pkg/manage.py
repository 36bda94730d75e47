#!/usr/bin/env python
"""
Command-line entry point for the gaze-mil pipeline.

`python manage.py synth|gaze|bags|train|eval|ablate|sweep-k|compare-gen|roc-plot --help`
"""
# Standard Library
import os
import sys


def main():
    """Run a pipeline or Django admin command."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "test_settings.settings")
    try:
        # Django
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the pinned stack with "
            "`pip install -r requirements.txt` in the active environment.",
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
