# -*- coding: utf-8 -*-
"""Apps."""

# Django
from django.apps import AppConfig


class GazeRenderConfig(AppConfig):
    """App config."""

    default_auto_field = "django.db.models.BigAutoField"
    name = "gaze_render"
