# -*- coding: utf-8 -*-
"""Dual cross-attention multiple instance learning: network, losses and checkpoints."""

__version__ = "0.1.0"
