# -*- coding: utf-8 -*-
"""Tests for bags.py."""

# Standard Library
from unittest import TestCase

# 3rd-party
import numpy as np
from testfixtures import LogCapture

# Project
from bag_builder.bags import augmentation_permutation
from bag_builder.bags import build_bag
from bag_builder.bags import crop_bag
from bag_builder.bags import label_instances
from bag_builder.bags import lesion_coverage
from bag_builder.bags import permute_bag
from bag_builder.bags import sequence_augment
from bag_builder.tests.utils import InstanceBagFactory
from bag_builder.windows import WindowScore
from bag_builder.windows import score_windows
from bag_builder.windows import select_top_k
from common.exceptions import InputDomainError
from gaze_render.rendering import GazeMap
from gaze_render.rendering import render_gaze_map
from synthdata.generator import DomainStyle
from synthdata.generator import FundusImage
from synthdata.generator import LesionSpec
from synthdata.generator import gen_fixations
from synthdata.generator import gen_image


def make_image(values):
    """A FundusImage whose mask covers everything."""
    return FundusImage(
        values=values,
        mask=np.ones(values.shape[:2], dtype=bool),
        disc_center=(0.0, 0.0),
        disc_radius=0.0,
    )


class TestInstanceBag(TestCase):
    """Tests for the InstanceBag invariants."""

    def test_instances_are_float32_in_unit_interval(self):
        """Instances are held as float32 in [0, 1]."""
        instances = InstanceBagFactory(k=2).instances
        assert instances.dtype == np.float32
        assert instances.shape == (2, 224, 224, 3)
        assert 0.0 <= instances.min() and instances.max() <= 1.0

    def test_wrong_patch_shape_rejected(self):
        """Patches must be 224 x 224 x 3."""
        with self.assertRaises(InputDomainError):
            InstanceBagFactory(instances=np.zeros((2, 100, 100, 3)), k=2)

    def test_integer_pixels_rejected(self):
        """Raw 8-bit pixels are not instances."""
        with self.assertRaises(InputDomainError):
            InstanceBagFactory(instances=np.zeros((2, 224, 224, 3), dtype=np.uint8), k=2)

    def test_values_outside_unit_interval_rejected(self):
        """Instances stay in [0, 1]."""
        with self.assertRaises(InputDomainError):
            InstanceBagFactory(instances=np.full((2, 224, 224, 3), 1.5), k=2)

    def test_float64_input_kept_as_float32(self):
        """Double precision input is stored as float32."""
        bag = InstanceBagFactory(instances=np.full((1, 224, 224, 3), 0.3), k=1)
        assert bag.instances.dtype == np.float32

    def test_position_count_must_match(self):
        """One position per instance."""
        with self.assertRaises(InputDomainError):
            InstanceBagFactory(k=2, positions=[(0, 0)])

    def test_negative_bag_with_positive_instance_rejected(self):
        """A bag is negative only if all its instances are."""
        with self.assertRaises(InputDomainError):
            InstanceBagFactory(k=4, label=0, instance_labels=[0, 1, 0, 0])

    def test_positive_bag_without_positive_instance_allowed(self):
        """The gaze may miss every lesion; that is reported, not fatal."""
        bag = InstanceBagFactory(k=2, label=1, instance_labels=[0, 0])
        assert bag.label == 1


class TestLesionLabels(TestCase):
    """Tests for lesion_coverage and label_instances."""

    def test_lesion_inside_window(self):
        """Full coverage."""
        lesion = LesionSpec(center=(50.0, 50.0), radius=5.0, contrast=0.3)
        assert lesion_coverage((0, 0), 200, lesion) == 1.0
        assert label_instances([(0, 0)], 200, [lesion]) == [1]

    def test_grazing_overlap_does_not_count(self):
        """A sliver of a lesion is below the quarter threshold."""
        lesion = LesionSpec(center=(50.0, 50.0), radius=5.0, contrast=0.3)
        assert 0.0 < lesion_coverage((0, 54), 200, lesion) < 0.25
        assert label_instances([(0, 54)], 200, [lesion]) == [0]

    def test_half_covered_lesion_counts(self):
        """Half a lesion clears the threshold."""
        lesion = LesionSpec(center=(50.0, 50.0), radius=8.0, contrast=-0.3)
        assert label_instances([(0, 50)], 100, [lesion]) == [1]

    def test_no_lesions(self):
        """Negative images give all-zero labels."""
        assert label_instances([(0, 0), (100, 100)], 200, []) == [0, 0]


class TestCropBag(TestCase):
    """Tests for crop_bag and build_bag."""

    def test_identity_resize_at_224(self):
        """M=224 copies the patch."""
        rng = np.random.default_rng(0)
        values = rng.integers(0, 256, size=(300, 300, 3)) / 255.0
        bag = crop_bag(make_image(values), [WindowScore(10, 20, 1.0)], 224, 0, 0)
        assert np.abs(bag.instances[0] - values[10:234, 20:244]).max() < 1e-6

    def test_identity_resize_keeps_generated_values(self):
        """Values off the 8-bit grid survive an M=224 crop unrounded."""
        image, _ = gen_image(1, DomainStyle.for_domain(0, 4), 3)
        bag = crop_bag(image, [WindowScore(300, 300, 1.0)], 224, 1, 0)
        source = image.values[300:524, 300:524]
        assert np.abs(bag.instances[0] - source).max() < 1e-6

    def test_constant_image_gives_constant_patches(self):
        """Interpolating a constant."""
        image = make_image(np.full((400, 400, 3), 0.4))
        selected = [WindowScore(0, 0, 1.0), WindowScore(100, 200, 0.5)]
        bag = crop_bag(image, selected, 200, 0, 0)
        assert np.allclose(bag.instances, 0.4, atol=1e-6)

    def test_both_window_sizes_resize_to_224(self):
        """M=100 and M=200 both make 224 x 224 patches."""
        image = make_image(np.random.default_rng(1).random((400, 400, 3)))
        for window in (100, 200):
            bag = crop_bag(image, [WindowScore(0, 0, 1.0)], window, 0, 0)
            assert bag.instances.shape == (1, 224, 224, 3)
            assert bag.window == window

    def test_positions_keep_selection_order(self):
        """Origins in the order they were selected."""
        image = make_image(np.zeros((300, 300, 3)))
        selected = [WindowScore(100, 0, 2.0), WindowScore(0, 100, 1.0)]
        assert crop_bag(image, selected, 100, 0, 3).positions == [(100, 0), (0, 100)]

    def test_window_outside_image_rejected(self):
        """Cropping never pads."""
        image = make_image(np.zeros((300, 300, 3)))
        with self.assertRaises(InputDomainError):
            crop_bag(image, [WindowScore(250, 0, 1.0)], 100, 0, 0)

    def test_positive_bag_missing_lesions_logs_warning(self):
        """The gaze missed the lesion."""
        image = make_image(np.zeros((300, 300, 3)))
        lesion = LesionSpec(center=(250.0, 250.0), radius=5.0, contrast=0.3)
        with LogCapture() as log:
            bag = crop_bag(
                image,
                [WindowScore(0, 0, 1.0)],
                100,
                1,
                0,
                bag_id="train_00001",
                lesions=[lesion],
            )
        assert bag.instance_labels == [0]
        log.check(
            ("root", "WARNING", "Positive bag train_00001 has no instance covering a lesion."),
        )

    def test_build_bag_follows_the_gaze(self):
        """The hot window is cropped first."""
        gaze_values = np.zeros((300, 300))
        gaze_values[200:300, 100:200] = 1.0
        gaze_map = GazeMap(width=300, height=300, values=gaze_values)
        bag = build_bag(make_image(np.zeros((300, 300, 3))), gaze_map, 2, 100, 0, 1)
        assert bag.positions[0] == (200, 100)
        assert bag.domain == 1

    def test_build_bag_uniform_selection_is_seeded(self):
        """Uniform selection repeats for a seed."""
        gaze_map = GazeMap(width=300, height=300, values=np.zeros((300, 300)))
        image = make_image(np.zeros((300, 300, 3)))
        first = build_bag(image, gaze_map, 3, 100, 0, 0, selection="uniform", seed=4)
        second = build_bag(image, gaze_map, 3, 100, 0, 0, selection="uniform", seed=4)
        assert first.positions == second.positions

    def test_build_bag_checks_map_size(self):
        """Image and gaze map must match."""
        gaze_map = GazeMap(width=200, height=200, values=np.zeros((200, 200)))
        with self.assertRaises(InputDomainError):
            build_bag(make_image(np.zeros((300, 300, 3))), gaze_map, 1, 100, 0, 0)

    def test_build_bag_unknown_selection(self):
        """Only gaze and uniform exist."""
        gaze_map = GazeMap(width=200, height=200, values=np.zeros((200, 200)))
        with self.assertRaises(InputDomainError):
            build_bag(make_image(np.zeros((200, 200, 3))), gaze_map, 1, 100, 0, 0, selection="x")


class TestSequenceAugment(TestCase):
    """Tests for sequence_augment and permute_bag."""

    def test_single_instance_unchanged(self):
        """Only one ordering exists."""
        bag = InstanceBagFactory(k=1)
        shuffled = sequence_augment(bag, 3)
        assert np.array_equal(shuffled.instances, bag.instances)
        assert shuffled.positions == bag.positions

    def test_deterministic_in_seed(self):
        """Same bag, same seed, same order."""
        bag = InstanceBagFactory(k=6)
        first, second = sequence_augment(bag, 11), sequence_augment(bag, 11)
        assert np.array_equal(first.instances, second.instances)
        assert first.positions == second.positions

    def test_seeds_give_several_orderings(self):
        """Seeds 0..23 on K=4 do not all agree."""
        orderings = {tuple(augmentation_permutation(4, seed)) for seed in range(24)}
        assert len(orderings) >= 2

    def test_shared_permutation_and_unchanged_labels(self):
        """Instances, positions and instance labels move together."""
        bag = InstanceBagFactory(k=4, label=1, domain=2, instance_labels=[1, 0, 0, 1])
        permutation = augmentation_permutation(4, 5)
        shuffled = sequence_augment(bag, 5)
        for i, j in enumerate(permutation):
            assert np.array_equal(shuffled.instances[i], bag.instances[j])
            assert shuffled.positions[i] == bag.positions[j]
            assert shuffled.instance_labels[i] == bag.instance_labels[j]
        assert (shuffled.label, shuffled.domain) == (1, 2)

    def test_inverse_permutation_restores_bag(self):
        """Bit-exact round trip through the inverse."""
        bag = InstanceBagFactory(k=5, label=1, instance_labels=[0, 0, 1, 0, 1])
        permutation = augmentation_permutation(5, 9)
        restored = permute_bag(sequence_augment(bag, 9), np.argsort(permutation))
        assert np.array_equal(restored.instances, bag.instances)
        assert restored.positions == bag.positions
        assert restored.instance_labels == bag.instance_labels

    def test_not_a_permutation_rejected(self):
        """Duplicated indices are refused."""
        with self.assertRaises(InputDomainError):
            permute_bag(InstanceBagFactory(k=3), [0, 0, 1])


class TestSyntheticBagLabels(TestCase):
    """Bag labels against the planted lesions on generated data."""

    def test_bag_labels_agree_with_instance_labels(self):
        """
        Negative bags never hold a positive instance; at least 95% of positive bags do.

        1000 bags, half of each class, K=10 and M=200 on 800 x 800 images.
        """
        positives_hit = 0
        positives = 0
        for seed in range(1000):
            label = seed % 2
            style = DomainStyle.for_domain(seed % 4, 4)
            image, lesions = gen_image(label, style, seed)
            fixations = gen_fixations(image, lesions, 30, 0.8, seed + 100_000)
            gaze_map = render_gaze_map(fixations, image.width, image.height)
            selected = select_top_k(score_windows(gaze_map, 200), 10)
            labels = label_instances([w.origin for w in selected], 200, lesions)
            if label == 0:
                assert lesions == []
                assert not any(labels)
            else:
                positives += 1
                positives_hit += int(any(labels))
        assert positives_hit / positives >= 0.95
