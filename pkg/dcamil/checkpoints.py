# -*- coding: utf-8 -*-
"""Versioned checkpoint files holding the model config, parameters and their shapes."""

# Standard Library
import logging
from pathlib import Path

# 3rd-party
import torch

# Project
from common.exceptions import ConfigurationError
from common.utils import ensure_directory
from common.utils import require_artifact

# Local
from .constants import CHECKPOINT_VERSION
from .networks import DcamilNet
from .networks import ModelConfig


def save_checkpoint(model, path, extra=None):
    """Write the model's config, state and parameter shapes; extra is stored alongside."""
    path = Path(path)
    ensure_directory(path.parent)
    state = model.state_dict()
    payload = {
        "version": CHECKPOINT_VERSION,
        "config": model.config.as_dict(),
        "state": state,
        "shapes": {name: list(tensor.shape) for name, tensor in state.items()},
        "extra": dict(extra or {}),
    }
    torch.save(payload, path)
    logging.debug(f"Saved checkpoint to {path}.")
    return path


def check_state_shapes(model, state):
    """Raise ConfigurationError listing every missing, unexpected or reshaped tensor."""
    expected = {name: tuple(tensor.shape) for name, tensor in model.state_dict().items()}
    stored = {name: tuple(tensor.shape) for name, tensor in state.items()}
    problems = []
    problems.extend(f"missing {name}" for name in sorted(set(expected) - set(stored)))
    problems.extend(f"unexpected {name}" for name in sorted(set(stored) - set(expected)))
    problems.extend(
        f"{name} is {stored[name]}, model expects {expected[name]}"
        for name in sorted(set(expected) & set(stored))
        if stored[name] != expected[name]
    )
    if problems:
        raise ConfigurationError(f"Checkpoint does not fit the model: {'; '.join(problems)}.")


def load_checkpoint(path, expected_config=None):
    """
    Rebuild the model stored at path; returns (model, extra).

    When expected_config is given the model is built from it instead, and the stored
    tensors must fit it exactly.
    """
    path = require_artifact(path, "checkpoint")
    payload = torch.load(path, map_location="cpu", weights_only=True)
    version = payload.get("version")
    if version != CHECKPOINT_VERSION:
        raise ConfigurationError(
            f"{path} is checkpoint version {version}, this build reads {CHECKPOINT_VERSION}.",
        )
    config = expected_config or ModelConfig.from_dict(payload["config"])
    model = DcamilNet(config, load_pretrained=False)
    state = payload["state"]
    check_state_shapes(model, state)
    model = model.to(next(iter(state.values())).dtype)
    model.load_state_dict(state)
    model.eval()
    return model, payload.get("extra", {})
