# -*- coding: utf-8 -*-
"""Utilities to help with testing."""
# 3rd-party
import factory
import numpy as np

# Project
from bag_builder.bags import InstanceBag
from common.constants import PATCH_SIZE
from gaze_render.rendering import GazeMap


class InstanceBagFactory(factory.Factory):
    """
    Factory for bags of random patches; pass k to choose the bag size.

    Instance values sit on the 8-bit grid so a cache round trip gives them back exactly.
    """

    class Meta:  # noqa: D106
        model = InstanceBag

    class Params:  # noqa: D106
        k = 4

    bag_id = factory.Sequence(lambda n: f"bag_{n:04d}")
    instances = factory.LazyAttributeSequence(
        lambda o, n: np.random.default_rng(n)
        .integers(0, 256, size=(o.k, PATCH_SIZE, PATCH_SIZE, 3))
        .astype(np.float32)
        / np.float32(255.0),
    )
    label = 0
    domain = 0
    positions = factory.LazyAttribute(
        lambda o: [(100 * (i // 7), 100 * (i % 7)) for i in range(o.k)],
    )
    window = 200
    instance_labels = None


def make_map(values):
    """Wrap a 2-D array as a gaze map."""
    values = np.asarray(values, dtype=np.float64)
    return GazeMap(width=values.shape[1], height=values.shape[0], values=values)


def brute_force_scores(values, window):
    """Every stride-M/2 window's mean by explicit loops, as (row, col, score)."""
    height, width = values.shape
    stride = window // 2
    scores = []
    row = 0
    while row + window <= height:
        col = 0
        while col + window <= width:
            total = values[row : row + window, col : col + window].sum()
            scores.append((row, col, total / (window * window)))
            col += stride
        row += stride
    return scores


def brute_force_top_k(scores, k):
    """Pick the best remaining window k times; ties go to the smaller origin."""
    remaining = list(scores)
    picked = []
    for _ in range(k):
        best = remaining[0]
        for candidate in remaining[1:]:
            if candidate[2] > best[2] or (candidate[2] == best[2] and candidate[:2] < best[:2]):
                best = candidate
        picked.append(best)
        remaining.remove(best)
    return picked
