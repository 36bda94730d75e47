# Django
import django.db.models.deletion
from django.db import migrations
from django.db import models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="TrainingRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("name", models.CharField(max_length=200, verbose_name="Human Name")),
                ("created", models.DateTimeField(auto_now_add=True)),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("running", "Running"),
                            ("finished", "Finished"),
                            ("diverged", "Diverged"),
                        ],
                        default="running",
                        max_length=20,
                    ),
                ),
                ("dual_network", models.BooleanField(default=True, verbose_name="DN")),
                ("contrastive", models.BooleanField(default=True, verbose_name="CL")),
                ("cross_attention", models.BooleanField(default=True, verbose_name="CA")),
                ("sequence_augmentation", models.BooleanField(default=True, verbose_name="SA")),
                ("domain_adversarial", models.BooleanField(default=True, verbose_name="DA")),
                ("config", models.JSONField(default=dict)),
                ("output_dir", models.CharField(blank=True, max_length=500)),
                ("best_epoch", models.IntegerField(blank=True, null=True)),
                ("best_val_accuracy", models.FloatField(blank=True, null=True)),
                (
                    "best_head",
                    models.CharField(
                        blank=True,
                        choices=[("h1", "DCAMIL-H1"), ("h2", "DCAMIL-H2")],
                        max_length=2,
                    ),
                ),
                ("checkpoint", models.CharField(blank=True, max_length=500)),
                ("diverged_epoch", models.IntegerField(blank=True, null=True)),
                ("test_metrics", models.JSONField(blank=True, default=dict)),
            ],
        ),
        migrations.CreateModel(
            name="EpochResult",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("epoch", models.IntegerField()),
                ("l1", models.FloatField(verbose_name="L1")),
                ("l2", models.FloatField(verbose_name="L2")),
                ("l3", models.FloatField(verbose_name="L3")),
                ("total", models.FloatField()),
                ("val_acc_h1", models.FloatField()),
                ("val_acc_h2", models.FloatField(blank=True, null=True)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="epochs",
                        to="train_eval.trainingrun",
                    ),
                ),
            ],
            options={
                "ordering": ["run", "epoch"],
            },
        ),
        migrations.AddConstraint(
            model_name="epochresult",
            constraint=models.UniqueConstraint(
                fields=("run", "epoch"),
                name="unique_epoch_per_run",
            ),
        ),
    ]
