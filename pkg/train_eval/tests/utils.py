# -*- coding: utf-8 -*-
"""Utilities to help with testing."""
# 3rd-party
import factory
from factory.django import DjangoModelFactory

# Project
from bag_builder.tests.utils import InstanceBagFactory
from train_eval.models import TrainingRun
from train_eval.training import StrategyFlags
from train_eval.training import TrainConfig


class TrainConfigFactory(factory.Factory):
    """Factory for short runs on toy bags."""

    epochs = 2
    learning_rate = 1e-2
    k = 3
    window = 32
    n_domains = 2
    flags = factory.LazyFunction(StrategyFlags)

    class Meta:  # noqa: D106
        model = TrainConfig


class TrainingRunFactory(DjangoModelFactory):
    """Factory for TrainingRun model."""

    name = factory.Sequence(lambda n: f"Run {n}")
    config = factory.LazyFunction(lambda: TrainConfigFactory().as_dict())

    class Meta:  # noqa: D106
        model = TrainingRun


def toy_bags(n, k=3, offset=0):
    """n random bags with alternating labels and domains."""
    return [
        InstanceBagFactory(k=k, label=(offset + i) % 2, domain=(offset + i) % 2)
        for i in range(n)
    ]


def toy_split_bags(n_train=4, n_val=2, n_test=2, k=3):
    """{split: bags}; every split holds both labels when it has two or more bags."""
    return {
        "train": toy_bags(n_train, k),
        "val": toy_bags(n_val, k),
        "test": toy_bags(n_test, k),
    }
