# -*- coding: utf-8 -*-
"""Admin."""

# Django
from django.contrib import admin

# Project
from train_eval.models import EpochResult
from train_eval.models import TrainingRun


class EpochResultInline(admin.TabularInline):  # noqa: D101
    model = EpochResult
    extra = 0


@admin.register(TrainingRun)
class TrainingRunAdmin(admin.ModelAdmin):  # noqa: D101
    list_display = ["name", "status", "best_epoch", "best_val_accuracy", "best_head", "created"]
    list_filter = ["status", "dual_network", "contrastive", "cross_attention"]
    inlines = [EpochResultInline]


admin.site.register(EpochResult)
