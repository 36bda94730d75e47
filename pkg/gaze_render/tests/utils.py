# -*- coding: utf-8 -*-
"""Utilities to help with testing."""
# 3rd-party
import factory

# Project
from gaze_render.rendering import FixationPoint


class FixationPointFactory(factory.Factory):
    """Factory for fixation points inside an 800 x 800 image."""

    x = factory.Faker("pyint", min_value=0, max_value=799)
    y = factory.Faker("pyint", min_value=0, max_value=799)

    class Meta:  # noqa: D106
        model = FixationPoint
