# -*- coding: utf-8 -*-
"""Schema for generator config files."""

# 3rd-party
from rest_framework import serializers

# Project
from common.constants import IMAGE_SIZE
from common.serializers import StrictSerializer
from common.serializers import validate_config
from gaze_render.constants import DEFAULT_SIGMA

# Local
from .constants import DEFAULT_ATTEND_PROB
from .constants import DEFAULT_DOMAIN_COUNT
from .constants import DEFAULT_FIXATION_COUNT
from .constants import SPLIT_COUNT_PRESETS
from .manifest import SPLIT_NAMES
from .manifest import SynthConfig


class SynthConfigSerializer(StrictSerializer):
    """
    Generator config.

    Per split/class counts are optional and override the preset's counts.
    """

    preset = serializers.ChoiceField(choices=sorted(SPLIT_COUNT_PRESETS), default="desk")
    train_negative = serializers.IntegerField(min_value=1, required=False)
    train_positive = serializers.IntegerField(min_value=1, required=False)
    val_negative = serializers.IntegerField(min_value=1, required=False)
    val_positive = serializers.IntegerField(min_value=1, required=False)
    test_negative = serializers.IntegerField(min_value=1, required=False)
    test_positive = serializers.IntegerField(min_value=1, required=False)
    domains = serializers.IntegerField(min_value=1, default=DEFAULT_DOMAIN_COUNT)
    attend_prob = serializers.FloatField(min_value=0.0, max_value=1.0, default=DEFAULT_ATTEND_PROB)
    n_fix = serializers.IntegerField(min_value=1, default=DEFAULT_FIXATION_COUNT)
    sigma = serializers.FloatField(min_value=1e-6, default=DEFAULT_SIGMA)
    size = serializers.IntegerField(min_value=64, default=IMAGE_SIZE)
    seed = serializers.IntegerField(min_value=0, default=0)


def synth_config_from_dict(raw, preset=None, seed=None):
    """
    Validate a raw key-value dict and build a SynthConfig.

    preset and seed, when given, override whatever the file says.
    """
    raw = dict(raw)
    if preset is not None:
        raw["preset"] = preset
    if seed is not None:
        raw["seed"] = seed
    data = validate_config(SynthConfigSerializer, raw)

    counts = dict(SPLIT_COUNT_PRESETS[data["preset"]])
    for split in SPLIT_NAMES:
        negatives, positives = counts[split]
        counts[split] = (
            data.get(f"{split}_negative", negatives),
            data.get(f"{split}_positive", positives),
        )
    return SynthConfig(
        counts=counts,
        n_domains=data["domains"],
        attend_prob=data["attend_prob"],
        n_fix=data["n_fix"],
        sigma=data["sigma"],
        size=data["size"],
        seed=data["seed"],
        preset=data["preset"],
    )
