# -*- coding: utf-8 -*-
"""Apps."""

# Django
from django.apps import AppConfig


class TrainEvalConfig(AppConfig):
    """App config."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "train_eval"
