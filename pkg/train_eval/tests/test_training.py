# -*- coding: utf-8 -*-
"""Tests for training.py."""

# Standard Library
import tempfile
from pathlib import Path
from unittest import TestCase
from unittest.mock import MagicMock
from unittest.mock import patch

# 3rd-party
import torch
from testfixtures import LogCapture

# Project
from common.exceptions import DivergenceError
from common.exceptions import InputDomainError
from common.utils import read_csv_rows
from dcamil.checkpoints import load_checkpoint
from dcamil.networks import DcamilNet
from train_eval.constants import STABILITY_HEADER
from train_eval.constants import TRAIN_LOG_HEADER
from train_eval.tests.utils import TrainConfigFactory
from train_eval.tests.utils import toy_bags
from train_eval.tests.utils import toy_split_bags
from train_eval.training import EpochRecord
from train_eval.training import RunRecord
from train_eval.training import StrategyFlags
from train_eval.training import batch_losses
from train_eval.training import epoch_bags
from train_eval.training import train
from train_eval.training import train_epoch


class TestStrategyFlags(TestCase):
    """Tests for StrategyFlags."""

    def test_contrastive_and_cross_attention_need_second_branch(self):
        """CL and CA without DN are refused."""
        with self.assertRaises(InputDomainError):
            StrategyFlags(dn=False, cl=True, ca=False)
        with self.assertRaises(InputDomainError):
            StrategyFlags(dn=False, cl=False, ca=True)

    def test_label(self):
        """Labels list the switched-on strategies."""
        assert StrategyFlags().label == "DN+CL+CA+SA+DA"
        assert StrategyFlags(cl=False, sa=False).label == "DN+CA+DA"
        assert StrategyFlags(False, False, False, False, False).label == "none"


class TestTrainConfig(TestCase):
    """Tests for TrainConfig."""

    def test_invalid_values_rejected(self):
        """Hyperparameters are range checked."""
        for changes in ({"epochs": 0}, {"learning_rate": 0.0}, {"momentum": 1.0}, {"k": 0}):
            with self.assertRaises(InputDomainError):
                TrainConfigFactory(**changes)

    def test_with_seed_derives_every_seed(self):
        """One integer seeds every component."""
        config = TrainConfigFactory().with_seed(5)
        assert config.encoder_seed == 5
        assert config.branch_seeds == (6, 7)
        assert config.domain_seed == 8
        assert config.data_seed == 5

    def test_model_config_follows_flags(self):
        """DN and CA pick the network layout."""
        cross = TrainConfigFactory().model_config(3)
        assert cross.dual
        assert cross.attention_mode == "cross"
        assert cross.n_domains == 3
        independent = TrainConfigFactory().replace(flags={"ca": False}).model_config(2)
        assert independent.attention_mode == "independent"
        single = TrainConfigFactory(flags=StrategyFlags(dn=False, cl=False, ca=False))
        assert not single.model_config(2).dual


class TestEpochBags(TestCase):
    """Tests for the per-epoch bag order and sequence augmentation."""

    def setUp(self):  # noqa: D102
        self.bags = toy_bags(5, k=6)

    def test_same_epoch_same_bags(self):
        """An epoch's order is fixed by its number."""
        config = TrainConfigFactory()
        first = [(b.bag_id, b.positions) for b in epoch_bags(self.bags, 1, config)]
        second = [(b.bag_id, b.positions) for b in epoch_bags(self.bags, 1, config)]
        assert first == second
        assert sorted(bag_id for bag_id, _ in first) == sorted(b.bag_id for b in self.bags)

    def test_augmentation_reorders_instances_between_epochs(self):
        """SA reshuffles instances every epoch."""
        config = TrainConfigFactory()
        one = {b.bag_id: b.positions for b in epoch_bags(self.bags, 1, config)}
        two = {b.bag_id: b.positions for b in epoch_bags(self.bags, 2, config)}
        assert one != two
        for bag in self.bags:
            assert sorted(one[bag.bag_id]) == sorted(bag.positions)

    def test_no_augmentation_keeps_instance_order(self):
        """Without SA instances keep the bag order."""
        config = TrainConfigFactory().replace(flags={"sa": False})
        original = {b.bag_id: b.positions for b in self.bags}
        for epoch in (1, 2, 3):
            for bag in epoch_bags(self.bags, epoch, config):
                assert bag.positions == original[bag.bag_id]


class TestBatchLosses(TestCase):
    """Tests for batch_losses and train_epoch."""

    def test_switched_off_terms_are_zero(self):
        """CL and DA off zero L2 and L3."""
        config = TrainConfigFactory().replace(flags={"cl": False, "da": False})
        model = DcamilNet(config.model_config(2))
        l1, l2, l3, total = batch_losses(model, toy_bags(2), config)
        assert l2.item() == 0.0
        assert l3.item() == 0.0
        assert total.item() == config.weights.alpha * l1.item()

    def test_all_terms_finite_and_positive(self):
        """Every loss term is a positive finite number."""
        config = TrainConfigFactory()
        model = DcamilNet(config.model_config(2))
        for loss in batch_losses(model, toy_bags(2), config)[:3]:
            assert torch.isfinite(loss)
            assert loss.item() > 0.0

    def test_accumulation_steps_every_few_batches(self):
        """Three batches accumulated in twos step twice: once full, once for the rest."""
        config = TrainConfigFactory().replace(accumulate=2)
        model = DcamilNet(config.model_config(2))
        optimizer = MagicMock()
        train_epoch(model, optimizer, toy_bags(3), 1, config)
        assert optimizer.step.call_count == 2


class TestTrain(TestCase):
    """Tests for the training loop."""

    def setUp(self):  # noqa: D102
        self.tmp = tempfile.TemporaryDirectory()
        self.out = Path(self.tmp.name) / "run"
        self.split_bags = toy_split_bags()
        self.config = TrainConfigFactory()

    def tearDown(self):  # noqa: D102
        self.tmp.cleanup()

    def test_same_seeds_same_run(self):
        """Two runs with one config give identical epoch records."""
        first = train(self.split_bags, self.config)
        second = train(self.split_bags, self.config)
        assert first.epochs == second.epochs
        assert first.best_epoch == second.best_epoch

    def test_outputs_written(self):
        """Training log, stability curve and best checkpoint land in out_dir."""
        record = train(self.split_bags, self.config, out_dir=self.out)
        log = read_csv_rows(self.out / "train_log.csv", expected_header=TRAIN_LOG_HEADER)
        assert [row["epoch"] for row in log] == ["1", "2"]
        stability = read_csv_rows(self.out / "stability.csv", expected_header=STABILITY_HEADER)
        assert len(stability) == 2
        _, extra = load_checkpoint(record.checkpoint)
        assert extra["epoch"] == record.best_epoch

    def test_best_epoch_is_earliest_maximum(self):
        """Either head counts, and a later tie does not replace the best epoch."""
        accuracies = [
            {"h1": 0.5, "h2": 0.75},
            {"h1": 0.75, "h2": 0.5},
            {"h1": 0.25, "h2": 0.5},
        ]
        config = self.config.replace(epochs=3)
        with patch("train_eval.training.head_accuracies", side_effect=accuracies):
            record = train(self.split_bags, config, out_dir=self.out)
        assert record.best_epoch == 1
        assert record.best_head == "h2"
        assert record.best_val_accuracy == 0.75

    def test_returned_model_holds_best_parameters(self):
        """The best epoch's weights come back, not the last."""
        accuracies = [{"h1": 1.0, "h2": 1.0}, {"h1": 0.0, "h2": 0.0}]
        with patch("train_eval.training.head_accuracies", side_effect=accuracies):
            record = train(self.split_bags, self.config, out_dir=self.out)
        saved, _ = load_checkpoint(record.checkpoint)
        for name, tensor in record.model.state_dict().items():
            assert torch.equal(tensor, saved.state_dict()[name])
        assert not record.model.training

    def test_on_epoch_sees_every_record(self):
        """The callback gets each epoch as it ends."""
        on_epoch = MagicMock()
        with LogCapture() as capture:
            record = train(self.split_bags, self.config, on_epoch=on_epoch)
        assert [c.args[0] for c in on_epoch.call_args_list] == record.epochs
        assert any("Best epoch" in r.getMessage() for r in capture.records)

    def test_divergence_raised_with_epoch(self):
        """A NaN loss stops training in that epoch."""
        nan = torch.tensor(float("nan"))
        with patch("train_eval.training.batch_losses", return_value=(nan, nan, nan, nan)):
            with self.assertRaises(DivergenceError) as e:
                train(self.split_bags, self.config)
        assert e.exception.epoch == 1

    def test_empty_splits_rejected(self):
        """Training needs train and val bags."""
        for split in ("train", "val"):
            split_bags = dict(self.split_bags, **{split: []})
            with self.assertRaises(InputDomainError):
                train(split_bags, self.config)


class TestRunRecord(TestCase):
    """Tests for RunRecord head selection."""

    def record(self, h1, h2, **config_changes):  # noqa: D102
        config = TrainConfigFactory().replace(**config_changes)
        epoch = EpochRecord(1, 0.5, 0.1, 0.2, 0.8, val_acc_h1=h1, val_acc_h2=h2)
        return RunRecord(config=config, epochs=[epoch], best_epoch=1)

    def test_ties_go_to_first_head(self):
        """H1 wins a tie."""
        assert self.record(0.5, 0.5).best_head == "h1"
        assert self.record(0.5, 0.75).best_head == "h2"

    def test_reported_heads(self):
        """Both heads, or only the best one when asked."""
        assert self.record(0.5, 0.75).reported_heads == ["h1", "h2"]
        assert self.record(0.5, 0.75, best_head=True).reported_heads == ["h2"]
        single = self.record(
            0.5,
            None,
            flags=StrategyFlags(dn=False, cl=False, ca=False),
        )
        assert single.reported_heads == ["h1"]
