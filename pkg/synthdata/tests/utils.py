# -*- coding: utf-8 -*-
"""Utilities to help with testing."""
# 3rd-party
import factory

# Project
from synthdata.manifest import SynthConfig


class SynthConfigFactory(factory.Factory):
    """Factory for small, fast generator configs."""

    counts = factory.LazyFunction(lambda: {"train": (2, 2), "val": (1, 1), "test": (1, 1)})
    n_domains = 2
    size = 256
    seed = factory.Sequence(lambda n: n)
    preset = "desk"

    class Meta:  # noqa: D106
        model = SynthConfig
