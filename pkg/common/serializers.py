# -*- coding: utf-8 -*-
"""Serializer base classes for validating config files."""

# 3rd-party
from rest_framework import serializers

# Project
from common.exceptions import ConfigurationError


class StrictSerializer(serializers.Serializer):
    """
    A serializer that refuses keys it does not declare.

    Config files are hand-written, so a typo in a hyperparameter name must fail loudly
    instead of silently leaving the default in place.
    """

    def to_internal_value(self, data):  # noqa: D102
        unknown = sorted(set(data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError(
                {key: ["Unknown configuration key."] for key in unknown},
            )
        return super().to_internal_value(data)


def flatten_errors(errors):
    """Turn a DRF error dict into a single line."""
    parts = []
    for key in sorted(errors):
        messages = errors[key]
        if not isinstance(messages, (list, tuple)):
            messages = [messages]
        parts.append(f"{key}: {' '.join(str(message) for message in messages)}")
    return "; ".join(parts)


def validate_config(serializer_class, data):
    """Validate a raw config dict and return the validated data, else ConfigurationError."""
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise ConfigurationError(f"Invalid configuration: {flatten_errors(serializer.errors)}")
    return dict(serializer.validated_data)
