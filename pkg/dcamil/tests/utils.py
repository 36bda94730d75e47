# -*- coding: utf-8 -*-
"""Utilities to help with testing."""
# 3rd-party
import factory
import torch
import torch.nn as nn

# Project
from dcamil.networks import DcamilNet
from dcamil.networks import ModelConfig
from dcamil.networks import seeded


class SmoothToyEncoder(nn.Module):
    """Non-overlapping 16 x 16 convolution, tanh and average pooling; smooth everywhere."""

    def __init__(self, feature_dim=8):  # noqa: D107
        super().__init__()
        self.conv = nn.Conv2d(3, feature_dim, kernel_size=16, stride=16)
        self.feature_dim = feature_dim

    def forward(self, x):  # noqa: D102
        return torch.tanh(self.conv(x)).mean(dim=(2, 3))


class ModelConfigFactory(factory.Factory):
    """Factory for toy sized models: Q=8, d=4, a=3."""

    encoder_widths = (2, 4, 4, 8)
    embedding_dim = 4
    attention_dim = 3
    n_domains = 2
    domain_hidden_dim = 5

    class Meta:  # noqa: D106
        model = ModelConfig


def toy_model(dtype=torch.float64, smooth=True, **overrides):
    """A toy DcamilNet; smooth swaps in SmoothToyEncoder for finite differences."""
    config = ModelConfigFactory(**overrides)
    encoder = None
    if smooth:
        encoder = seeded(11, lambda: SmoothToyEncoder(config.feature_dim))
    return DcamilNet(config, encoder=encoder).to(dtype)


def random_instances(k, seed, dtype=torch.float64):
    """K random patches in [0, 1], channels first."""
    generator = torch.Generator().manual_seed(seed)
    return torch.rand((k, 3, 224, 224), generator=generator, dtype=dtype)
