# -*- coding: utf-8 -*-
"""Sliding window scoring on gaze maps and window selection."""

# Standard Library
from dataclasses import dataclass

# 3rd-party
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# Project
from common.exceptions import InputDomainError


@dataclass(frozen=True)
class WindowScore:
    """Mean gaze value of the M x M window whose top-left corner is (row, col)."""

    row: int
    col: int
    score: float

    @property
    def origin(self):  # noqa: D102
        return self.row, self.col


def window_grid(extent, window):
    """Window origins along one axis for stride window/2."""
    stride = window // 2
    return list(range(0, (extent - window) // stride * stride + 1, stride))


def window_count(height, width, window):
    """How many windows score_windows yields on a height x width map; 0 if M does not fit."""
    if window > min(height, width):
        return 0
    return len(window_grid(height, window)) * len(window_grid(width, window))


def score_windows(gaze_map, window):
    """
    Score every fully contained M x M window on the stride-M/2 grid.

    Windows come back in row-major order of their origins.
    """
    values = gaze_map.values
    height, width = values.shape
    if window < 2 or window % 2:
        raise InputDomainError(f"Window size M must be an even number >= 2, got {window}.")
    if window > min(width, height):
        raise InputDomainError(
            f"Window size M={window} does not fit in the {width}x{height} gaze map.",
        )

    stride = window // 2
    means = sliding_window_view(values, (window, window))[::stride, ::stride].mean(axis=(2, 3))
    rows, cols = window_grid(height, window), window_grid(width, window)
    return [
        WindowScore(row=row, col=col, score=float(means[i, j]))
        for i, row in enumerate(rows)
        for j, col in enumerate(cols)
    ]


def _check_k(scores, k):
    if k < 1:
        raise InputDomainError(f"K must be at least 1, got {k}.")
    if k > len(scores):
        raise InputDomainError(f"Asked for K={k} windows but only {len(scores)} exist.")


def select_top_k(scores, k):
    """The k highest scoring windows, best first; ties go to the smaller (row, col)."""
    _check_k(scores, k)
    return sorted(scores, key=lambda w: (-w.score, w.row, w.col))[:k]


def select_uniform_k(scores, k, seed):
    """
    K grid windows drawn uniformly without replacement, ignoring the scores.

    This is the gaze-free way of making instances that gaze-built bags are compared to.
    """
    _check_k(scores, k)
    picks = np.random.default_rng(seed).choice(len(scores), size=k, replace=False)
    return [scores[int(i)] for i in picks]
