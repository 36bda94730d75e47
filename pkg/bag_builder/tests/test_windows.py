# -*- coding: utf-8 -*-
"""Tests for windows.py."""

# Standard Library
from unittest import TestCase

# 3rd-party
import numpy as np

# Project
from bag_builder.tests.utils import brute_force_scores
from bag_builder.tests.utils import brute_force_top_k
from bag_builder.tests.utils import make_map
from bag_builder.windows import WindowScore
from bag_builder.windows import score_windows
from bag_builder.windows import select_top_k
from bag_builder.windows import select_uniform_k
from bag_builder.windows import window_count
from common.exceptions import InputDomainError


class TestScoreWindows(TestCase):
    """Tests for score_windows."""

    def test_window_count_on_800_map(self):
        """floor((800 - 200) / 100) + 1 = 7 windows per axis."""
        scores = score_windows(make_map(np.zeros((800, 800))), 200)
        assert len(scores) == 49
        assert {s.row for s in scores} == {0, 100, 200, 300, 400, 500, 600}

    def test_count_formula_on_rectangular_map(self):
        """Each axis counts separately."""
        scores = score_windows(make_map(np.zeros((90, 130))), 20)
        assert len(scores) == 8 * 12

    def test_uniform_map_scores_constant(self):
        """Mean of a constant."""
        scores = score_windows(make_map(np.full((64, 64), 3.5)), 16)
        assert all(s.score == 3.5 for s in scores)

    def test_single_hot_pixel(self):
        """Only the origin window sees the hot pixel."""
        values = np.zeros((8, 8))
        values[0, 0] = 1
        scores = score_windows(make_map(values), 4)
        best = max(scores, key=lambda s: s.score)
        assert (best.row, best.col, best.score) == (0, 0, 1 / 16)
        assert sum(1 for s in scores if s.score > 0) == 1

    def test_odd_window_rejected(self):
        """M must be even."""
        with self.assertRaises(InputDomainError):
            score_windows(make_map(np.zeros((10, 10))), 3)

    def test_window_larger_than_map_rejected(self):
        """M must fit."""
        with self.assertRaises(InputDomainError):
            score_windows(make_map(np.zeros((10, 12))), 12)


class TestWindowCount(TestCase):
    """Tests for window_count."""

    def test_agrees_with_score_windows(self):
        """Counting windows never scores them, but gets the same number."""
        for height, width, window in ((800, 800, 200), (800, 800, 100), (90, 130, 20)):
            scores = score_windows(make_map(np.zeros((height, width))), window)
            assert window_count(height, width, window) == len(scores)

    def test_fifty_windows_need_more_than_800_pixels_at_m200(self):
        """M=200 gives 49 windows at 800 and 64 at 900."""
        assert window_count(800, 800, 200) == 49
        assert window_count(900, 900, 200) == 64
        assert window_count(800, 800, 100) == 225

    def test_window_too_large(self):
        """No window fits."""
        assert window_count(10, 12, 12) == 0


class TestSelectTopK(TestCase):
    """Tests for select_top_k."""

    def test_ties_broken_lexicographically(self):
        """All-equal scores give the smallest origins."""
        scores = score_windows(make_map(np.ones((12, 12))), 4)
        picked = select_top_k(scores, 3)
        assert [(s.row, s.col) for s in picked] == [(0, 0), (0, 2), (0, 4)]

    def test_single_hot_top_one(self):
        """The hot window wins."""
        values = np.zeros((8, 8))
        values[0, 0] = 1
        assert select_top_k(score_windows(make_map(values), 4), 1)[0].origin == (0, 0)

    def test_k_equal_to_window_count_returns_all_sorted(self):
        """Identity selection."""
        rng = np.random.default_rng(0)
        scores = score_windows(make_map(rng.integers(0, 5, size=(16, 16))), 4)
        picked = select_top_k(scores, len(scores))
        assert sorted(picked, key=lambda s: (s.row, s.col)) == sorted(
            scores,
            key=lambda s: (s.row, s.col),
        )
        assert all(a.score >= b.score for a, b in zip(picked, picked[1:]))

    def test_k_too_large_reports_both_counts(self):
        """Both numbers appear in the message."""
        scores = score_windows(make_map(np.zeros((8, 8))), 4)
        with self.assertRaises(InputDomainError) as e:
            select_top_k(scores, 10)
        assert "K=10" in str(e.exception)
        assert "9" in str(e.exception)

    def test_k_below_one_rejected(self):
        """K must be at least one."""
        with self.assertRaises(InputDomainError):
            select_top_k([WindowScore(0, 0, 1.0)], 0)

    def test_matches_brute_force_on_random_maps(self):
        """Scores and selection, tie order included, equal brute force on 100 maps."""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            height, width = rng.integers(6, 21, size=2)
            window = int(rng.choice([2, 4, 6]))
            values = rng.integers(0, 4, size=(height, width)).astype(np.float64)
            scores = score_windows(make_map(values), window)
            expected = brute_force_scores(values, window)
            assert [(s.row, s.col, s.score) for s in scores] == expected
            k = int(rng.integers(1, len(scores) + 1))
            picked = select_top_k(scores, k)
            assert [(s.row, s.col, s.score) for s in picked] == brute_force_top_k(expected, k)

    def test_raised_window_ranks_first(self):
        """Raising one window's interior above everything else puts it first."""
        rng = np.random.default_rng(5)
        for _ in range(20):
            values = rng.random((40, 40))
            row, col = 4 * rng.integers(0, 9, size=2)
            values[row : row + 8, col : col + 8] = 10.0
            assert select_top_k(score_windows(make_map(values), 8), 1)[0].origin == (row, col)


class TestSelectUniformK(TestCase):
    """Tests for select_uniform_k."""

    def test_seeded_distinct_windows(self):
        """Same seed, same windows; never repeats a window."""
        scores = score_windows(make_map(np.zeros((100, 100))), 20)
        first = select_uniform_k(scores, 10, seed=3)
        assert first == select_uniform_k(scores, 10, seed=3)
        assert len({s.origin for s in first}) == 10

    def test_ignores_gaze(self):
        """Selection depends only on the grid and the seed."""
        zeros = score_windows(make_map(np.zeros((60, 60))), 10)
        hot = np.zeros((60, 60))
        hot[:10, :10] = 1
        hot_scores = score_windows(make_map(hot), 10)
        assert [s.origin for s in select_uniform_k(zeros, 5, 1)] == [
            s.origin for s in select_uniform_k(hot_scores, 5, 1)
        ]
