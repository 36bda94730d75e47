# -*- coding: utf-8 -*-
"""Run registry: one row per training run and one per epoch of it."""

# Standard Library
import logging

# Django
from django.core.exceptions import ValidationError
from django.db import models

# Project
from common.constants import CLASSIFIER_HEADS

# Local
from .constants import RUN_STATUSES
from .training import StrategyFlags


class TrainingRun(models.Model):
    """A `train` invocation: its strategy flags, full config and outcome."""

    name = models.CharField(max_length=200, verbose_name="Human Name")
    created = models.DateTimeField(auto_now_add=True)
    status = models.CharField(choices=RUN_STATUSES, max_length=20, default="running")
    dual_network = models.BooleanField(default=True, verbose_name="DN")
    contrastive = models.BooleanField(default=True, verbose_name="CL")
    cross_attention = models.BooleanField(default=True, verbose_name="CA")
    sequence_augmentation = models.BooleanField(default=True, verbose_name="SA")
    domain_adversarial = models.BooleanField(default=True, verbose_name="DA")
    config = models.JSONField(default=dict)
    output_dir = models.CharField(max_length=500, blank=True)
    best_epoch = models.IntegerField(null=True, blank=True)
    best_val_accuracy = models.FloatField(null=True, blank=True)
    best_head = models.CharField(choices=CLASSIFIER_HEADS, max_length=2, blank=True)
    checkpoint = models.CharField(max_length=500, blank=True)
    diverged_epoch = models.IntegerField(null=True, blank=True)
    test_metrics = models.JSONField(default=dict, blank=True)

    @classmethod
    def start(cls, name, config, output_dir=""):
        """Register a run from a TrainConfig before training begins."""
        flags = config.flags
        return cls.objects.create(
            name=name,
            dual_network=flags.dn,
            contrastive=flags.cl,
            cross_attention=flags.ca,
            sequence_augmentation=flags.sa,
            domain_adversarial=flags.da,
            config=config.as_dict(),
            output_dir=str(output_dir),
        )

    @property
    def flags(self):  # noqa: D102
        return StrategyFlags(
            dn=self.dual_network,
            cl=self.contrastive,
            ca=self.cross_attention,
            sa=self.sequence_augmentation,
            da=self.domain_adversarial,
        )

    def clean(self):
        """CL and CA both need the second branch."""  # noqa: D401
        super().clean()
        if not self.dual_network:
            errors = {}
            if self.contrastive:
                errors["contrastive"] = "The contrastive loss needs the second branch (DN)."
            if self.cross_attention:
                errors["cross_attention"] = "Cross attention needs the second branch (DN)."
            if errors:
                raise ValidationError(errors)

    def record_epoch(self, record):
        """Store one EpochRecord."""
        return EpochResult.objects.create(
            run=self,
            epoch=record.epoch,
            l1=record.l1,
            l2=record.l2,
            l3=record.l3,
            total=record.total,
            val_acc_h1=record.val_acc_h1,
            val_acc_h2=record.val_acc_h2,
        )

    def finish(self, run_record, test_metrics):
        """Store the outcome of a finished run; test_metrics maps heads to MetricsReports."""
        self.status = "finished"
        self.best_epoch = run_record.best_epoch
        self.best_val_accuracy = run_record.best_val_accuracy
        self.best_head = run_record.best_head
        self.checkpoint = str(run_record.checkpoint or "")
        self.test_metrics = {head: report.as_dict() for head, report in test_metrics.items()}
        self.save()
        logging.info(f"Run {self.pk} ({self.name}) finished at best epoch {self.best_epoch}.")

    def mark_diverged(self, epoch):  # noqa: D102
        self.status = "diverged"
        self.diverged_epoch = epoch
        self.save()
        logging.warning(f"Run {self.pk} ({self.name}) diverged in epoch {epoch}.")

    def save(self, **kwargs):
        """Call clean on save, even from backend."""
        self.clean()
        super().save(**kwargs)

    def __str__(self):
        """String rep for model."""
        return f"{self.name} - {self.flags.label} ({self.status})"


class EpochResult(models.Model):
    """Mean training losses and validation accuracies of one epoch."""

    run = models.ForeignKey(TrainingRun, on_delete=models.CASCADE, related_name="epochs")
    epoch = models.IntegerField()
    l1 = models.FloatField(verbose_name="L1")
    l2 = models.FloatField(verbose_name="L2")
    l3 = models.FloatField(verbose_name="L3")
    total = models.FloatField()
    val_acc_h1 = models.FloatField()
    val_acc_h2 = models.FloatField(null=True, blank=True)

    class Meta:  # noqa: D106
        ordering = ["run", "epoch"]
        constraints = [
            models.UniqueConstraint(fields=["run", "epoch"], name="unique_epoch_per_run"),
        ]

    def __str__(self):
        """String rep for model."""
        return f"{self.run.name} epoch {self.epoch}"
