# -*- coding: utf-8 -*-
"""Schema for training config files."""

# 3rd-party
from rest_framework import serializers

# Project
from bag_builder.constants import DEFAULT_BAG_SIZE
from bag_builder.constants import INSTANCE_SELECTIONS
from common.serializers import StrictSerializer
from common.serializers import validate_config
from dcamil.constants import DEFAULT_ALPHA
from dcamil.constants import DEFAULT_BETA
from dcamil.constants import DEFAULT_GAMMA
from dcamil.constants import DEFAULT_LAMBDA_GRL
from dcamil.constants import DEFAULT_TAU
from dcamil.constants import ENCODER_PRESETS
from dcamil.losses import LossWeights
from synthdata.constants import PRESET_WINDOW_SIZES

# Local
from .constants import DEFAULT_EPOCHS
from .constants import DEFAULT_LEARNING_RATE
from .constants import DEFAULT_MOMENTUM
from .constants import PAPER_SCALE_ENCODER
from .constants import PAPER_SCALE_EPOCHS
from .constants import PAPER_SCALE_LEARNING_RATE
from .training import StrategyFlags
from .training import TrainConfig


class TrainConfigSerializer(StrictSerializer):
    """
    Training config.

    epochs, learning_rate and encoder fall back to the paper-scale values when asked
    for, and window falls back to the preset's window size.
    """

    preset = serializers.ChoiceField(choices=sorted(PRESET_WINDOW_SIZES), default="desk")
    epochs = serializers.IntegerField(min_value=1, required=False)
    learning_rate = serializers.FloatField(min_value=1e-12, required=False)
    momentum = serializers.FloatField(min_value=0.0, max_value=0.999999, default=DEFAULT_MOMENTUM)
    batch_size = serializers.IntegerField(min_value=1, default=1)
    accumulate = serializers.IntegerField(min_value=1, default=1)
    seed = serializers.IntegerField(min_value=0, default=0)
    alpha = serializers.FloatField(min_value=0.0, default=DEFAULT_ALPHA)
    beta = serializers.FloatField(min_value=0.0, default=DEFAULT_BETA)
    gamma = serializers.FloatField(min_value=0.0, default=DEFAULT_GAMMA)
    tau = serializers.FloatField(min_value=1e-12, default=DEFAULT_TAU)
    lambda_grl = serializers.FloatField(min_value=0.0, default=DEFAULT_LAMBDA_GRL)
    dn = serializers.BooleanField(default=True)
    cl = serializers.BooleanField(default=True)
    ca = serializers.BooleanField(default=True)
    sa = serializers.BooleanField(default=True)
    da = serializers.BooleanField(default=True)
    k = serializers.IntegerField(min_value=1, default=DEFAULT_BAG_SIZE)
    window = serializers.IntegerField(min_value=2, required=False)
    selection = serializers.ChoiceField(
        choices=[selection for selection, _ in INSTANCE_SELECTIONS],
        default="gaze",
    )
    encoder = serializers.ChoiceField(
        choices=[preset for preset, _ in ENCODER_PRESETS],
        required=False,
    )
    pretrained_weights = serializers.CharField(allow_blank=True, default="")
    best_head = serializers.BooleanField(default=False)

    def validate(self, data):  # noqa: D102
        if not data.get("dn", True):
            for flag in ("cl", "ca"):
                if data.get(flag, True):
                    raise serializers.ValidationError(
                        {flag: [f"{flag.upper()} needs the second branch (dn = true)."]},
                    )
        if data.get("window", 2) % 2:
            raise serializers.ValidationError({"window": ["Window side must be even."]})
        return data


def train_config_from_dict(raw, paper_scale=False, seed=None, preset=None):
    """
    Validate a raw key-value dict and build a TrainConfig.

    seed, when given, overrides the file and every run seed is derived from it.
    """
    raw = dict(raw)
    if seed is not None:
        raw["seed"] = seed
    if preset is not None:
        raw["preset"] = preset
    data = validate_config(TrainConfigSerializer, raw)

    if paper_scale:
        epochs, learning_rate, encoder = (
            PAPER_SCALE_EPOCHS,
            PAPER_SCALE_LEARNING_RATE,
            PAPER_SCALE_ENCODER,
        )
    else:
        epochs, learning_rate, encoder = DEFAULT_EPOCHS, DEFAULT_LEARNING_RATE, "small"

    config = TrainConfig(
        epochs=data.get("epochs", epochs),
        learning_rate=data.get("learning_rate", learning_rate),
        momentum=data["momentum"],
        batch_size=data["batch_size"],
        accumulate=data["accumulate"],
        weights=LossWeights(
            alpha=data["alpha"],
            beta=data["beta"],
            gamma=data["gamma"],
            tau=data["tau"],
            lambda_grl=data["lambda_grl"],
        ),
        flags=StrategyFlags(
            dn=data["dn"],
            cl=data["cl"],
            ca=data["ca"],
            sa=data["sa"],
            da=data["da"],
        ),
        k=data["k"],
        window=data.get("window", PRESET_WINDOW_SIZES[data["preset"]]),
        selection=data["selection"],
        encoder=data.get("encoder", encoder),
        pretrained_weights=data["pretrained_weights"],
        best_head=data["best_head"],
    )
    return config.with_seed(data["seed"])


def train_config_key_values(config):
    """Flat dict in the config file vocabulary, for echoing next to a run's outputs."""
    values = {
        "epochs": config.epochs,
        "learning_rate": config.learning_rate,
        "momentum": config.momentum,
        "batch_size": config.batch_size,
        "accumulate": config.accumulate,
        "seed": config.data_seed,
        "k": config.k,
        "window": config.window,
        "selection": config.selection,
        "encoder": config.encoder,
        "pretrained_weights": config.pretrained_weights,
        "best_head": str(config.best_head).lower(),
    }
    for name in ("alpha", "beta", "gamma", "tau", "lambda_grl"):
        values[name] = getattr(config.weights, name)
    for name, enabled in config.flags.as_dict().items():
        values[name] = str(enabled).lower()
    return values
