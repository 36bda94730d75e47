# -*- coding: utf-8 -*-
"""
The training loop.

One optimisation step sees batch_size bags per forward batch, with gradients accumulated
over `accumulate` batches. Every source of randomness is drawn from the seeds in the
TrainConfig, so two runs with the same config and bags give the same RunRecord.
"""

# Standard Library
import copy
import dataclasses
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

# 3rd-party
import numpy as np
import torch

# Project
from bag_builder.bags import sequence_augment
from bag_builder.constants import DEFAULT_BAG_SIZE
from common.exceptions import DivergenceError
from common.exceptions import InputDomainError
from common.utils import append_csv_row
from common.utils import derive_seed
from common.utils import ensure_directory
from common.utils import format_float
from common.utils import write_csv_rows
from dcamil.checkpoints import save_checkpoint
from dcamil.constants import DEFAULT_BRANCH_SEEDS
from dcamil.constants import DEFAULT_DOMAIN_SEED
from dcamil.constants import DEFAULT_ENCODER_SEED
from dcamil.losses import LossWeights
from dcamil.losses import classification_loss
from dcamil.losses import contrastive_loss
from dcamil.losses import domain_loss
from dcamil.losses import total_loss
from dcamil.networks import DcamilNet
from dcamil.networks import ModelConfig
from dcamil.networks import forward_bag

# Local
from .constants import BEST_CHECKPOINT_FILENAME
from .constants import DEFAULT_EPOCHS
from .constants import DEFAULT_LEARNING_RATE
from .constants import DEFAULT_MOMENTUM
from .constants import STABILITY_FILENAME
from .constants import STABILITY_HEADER
from .constants import STRATEGY_FLAGS
from .constants import TRAIN_LOG_FILENAME
from .constants import TRAIN_LOG_HEADER
from .evaluation import head_accuracies


@dataclass(frozen=True)
class StrategyFlags:
    """
    Which strategies a run uses.

    dn: second branch, cl: contrastive loss, ca: cross attention,
    sa: sequence augmentation, da: domain adversarial loss.
    """

    dn: bool = True
    cl: bool = True
    ca: bool = True
    sa: bool = True
    da: bool = True

    def __post_init__(self):  # noqa: D105
        if self.cl and not self.dn:
            raise InputDomainError("The contrastive loss (CL) needs the second branch (DN).")
        if self.ca and not self.dn:
            raise InputDomainError("Cross attention (CA) needs the second branch (DN).")

    @property
    def label(self):
        """Enabled flags joined with '+', or 'none'."""
        enabled = [name for key, name in STRATEGY_FLAGS if getattr(self, key)]
        return "+".join(enabled) or "none"

    def as_dict(self):  # noqa: D102
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class TrainConfig:
    """Everything a training run needs besides the bags."""

    epochs: int = DEFAULT_EPOCHS
    learning_rate: float = DEFAULT_LEARNING_RATE
    momentum: float = DEFAULT_MOMENTUM
    batch_size: int = 1
    accumulate: int = 1
    encoder_seed: int = DEFAULT_ENCODER_SEED
    branch_seeds: Tuple[int, int] = DEFAULT_BRANCH_SEEDS
    domain_seed: int = DEFAULT_DOMAIN_SEED
    data_seed: int = 0
    weights: LossWeights = field(default_factory=LossWeights)
    flags: StrategyFlags = field(default_factory=StrategyFlags)
    k: int = DEFAULT_BAG_SIZE
    window: int = 200
    selection: str = "gaze"
    encoder: str = "small"
    pretrained_weights: str = ""
    best_head: bool = False
    n_domains: Optional[int] = None

    def __post_init__(self):  # noqa: D105
        if self.epochs < 1:
            raise InputDomainError(f"Training needs at least one epoch, got {self.epochs}.")
        if not self.learning_rate > 0:
            raise InputDomainError(f"Learning rate must be > 0, got {self.learning_rate}.")
        if not 0 <= self.momentum < 1:
            raise InputDomainError(f"Momentum must be in [0, 1), got {self.momentum}.")
        if self.batch_size < 1 or self.accumulate < 1:
            raise InputDomainError("batch_size and accumulate must both be >= 1.")
        if self.k < 1:
            raise InputDomainError(f"K must be >= 1, got {self.k}.")

    def replace(self, **changes):
        """A copy with some fields changed; flags may be given as a dict."""
        if isinstance(changes.get("flags"), dict):
            changes["flags"] = StrategyFlags(**changes["flags"])
        return dataclasses.replace(self, **changes)

    def with_seed(self, seed):
        """Every seed derived from one integer."""
        return self.replace(
            encoder_seed=seed,
            branch_seeds=(seed + 1, seed + 2),
            domain_seed=seed + 3,
            data_seed=seed,
        )

    def model_config(self, n_domains):
        """The network this run trains."""
        return ModelConfig(
            encoder=self.encoder,
            n_domains=n_domains,
            dual=self.flags.dn,
            attention_mode="cross" if self.flags.ca else "independent",
            encoder_seed=self.encoder_seed,
            branch_seeds=tuple(self.branch_seeds),
            domain_seed=self.domain_seed,
            pretrained_weights=self.pretrained_weights,
        )

    def as_dict(self):
        """JSON-friendly copy for the run registry."""
        values = dataclasses.asdict(self)
        values["branch_seeds"] = list(self.branch_seeds)
        return values


@dataclass(frozen=True)
class EpochRecord:
    """Mean losses over the epoch's batches and the validation accuracy of each head."""

    epoch: int
    l1: float
    l2: float
    l3: float
    total: float
    val_acc_h1: float
    val_acc_h2: Optional[float] = None

    @property
    def best_val_accuracy(self):  # noqa: D102
        return max(acc for acc in (self.val_acc_h1, self.val_acc_h2) if acc is not None)

    def log_row(self):  # noqa: D102
        val_acc_h2 = "" if self.val_acc_h2 is None else format_float(self.val_acc_h2)
        losses = [format_float(v) for v in (self.l1, self.l2, self.l3, self.total)]
        return [self.epoch, *losses, format_float(self.val_acc_h1), val_acc_h2]


@dataclass
class RunRecord:
    """
    What a run produced.

    model holds the best-validation parameters; checkpoint is where they were saved, if
    an output directory was given.
    """

    config: TrainConfig
    epochs: List[EpochRecord] = field(default_factory=list)
    best_epoch: Optional[int] = None
    checkpoint: Optional[Path] = None
    model: Any = field(default=None, repr=False)
    test_metrics: Dict[str, Any] = field(default_factory=dict)

    @property
    def best(self):
        """The EpochRecord of the best epoch."""
        return next(record for record in self.epochs if record.epoch == self.best_epoch)

    @property
    def best_val_accuracy(self):  # noqa: D102
        return self.best.best_val_accuracy

    @property
    def best_head(self):
        """The head with the higher validation accuracy at the best epoch; ties go to h1."""
        best = self.best
        if best.val_acc_h2 is not None and best.val_acc_h2 > best.val_acc_h1:
            return "h2"
        return "h1"

    @property
    def reported_heads(self):
        """Heads to report: the best one when the config asks for it, else all of them."""
        if self.config.best_head:
            return [self.best_head]
        return ["h1", "h2"] if self.config.flags.dn else ["h1"]

    def write_stability_csv(self, path):  # noqa: D102
        rows = [record.log_row()[:1] + record.log_row()[5:] for record in self.epochs]
        return write_csv_rows(path, STABILITY_HEADER, rows)


def infer_domain_count(bags):
    """D from the largest domain id present."""
    domains = getattr(bags, "domains", None)
    if domains is None:
        domains = [bag.domain for bag in bags]
    return max(domains) + 1


def epoch_order(n_bags, epoch, data_seed):
    """The order training bags are visited in during one epoch."""
    return np.random.default_rng(derive_seed(data_seed, epoch)).permutation(n_bags).tolist()


def epoch_bags(bags, epoch, config):
    """
    Yield the bags of one epoch in the seeded order.

    With SA on each bag's instances are reshuffled with a seed drawn from the epoch and
    the bag's index; with it off a bag is identical in every epoch.
    """
    for index in epoch_order(len(bags), epoch, config.data_seed):
        bag = bags[index]
        if config.flags.sa:
            bag = sequence_augment(bag, derive_seed(config.data_seed, epoch, index))
        yield bag


def _batches(bags, size):
    batch = []
    for bag in bags:
        batch.append(bag)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def batch_losses(model, bags, config):
    """(L1, L2, L3, total) over a batch of bags; switched-off terms are zero."""
    outputs = [forward_bag(model, bag) for bag in bags]
    p1 = torch.stack([output.p1 for output in outputs])
    p2 = torch.stack([output.p2 for output in outputs]) if model.dual else None
    l1 = classification_loss(p1, p2, [bag.label for bag in bags])
    zero = l1.new_zeros(())

    l2 = zero
    if config.flags.cl:
        l2 = sum(
            (contrastive_loss(output.h1, output.h2, config.weights.tau) for output in outputs),
            zero,
        )
    l3 = zero
    if config.flags.da:
        l3 = domain_loss(
            [output.features for output in outputs],
            [bag.domain for bag in bags],
            model.domain_head,
            config.weights.lambda_grl,
        )
    return l1, l2, l3, total_loss(l1, l2, l3, config.weights)


def train_epoch(model, optimizer, bags, epoch, config):
    """One pass over the training bags; returns the mean (L1, L2, L3, total)."""
    model.train()
    optimizer.zero_grad()
    sums = np.zeros(4)
    n_batches = 0
    pending = 0
    for batch in _batches(epoch_bags(bags, epoch, config), config.batch_size):
        losses = batch_losses(model, batch, config)
        values = [loss.item() for loss in losses]
        if not all(math.isfinite(value) for value in values):
            raise DivergenceError(
                f"Loss became non-finite in epoch {epoch}: L1={values[0]}, L2={values[1]}, "
                f"L3={values[2]}.",
                epoch,
            )
        (losses[3] / config.accumulate).backward()
        sums += values
        n_batches += 1
        pending += 1
        if pending == config.accumulate:
            optimizer.step()
            optimizer.zero_grad()
            pending = 0
    if pending:
        optimizer.step()
        optimizer.zero_grad()
    return tuple(sums / n_batches)


def train(split_bags, config, out_dir=None, on_epoch=None):
    """
    Train on split_bags["train"], selecting the best epoch on split_bags["val"].

    The best epoch has the highest validation accuracy of either head (h1 only without
    DN); ties keep the earliest. With out_dir the training log, stability curve and best
    checkpoint are written there. on_epoch is called with each EpochRecord.
    """
    train_bags = split_bags.get("train") or []
    val_bags = split_bags.get("val") or []
    if len(train_bags) == 0 or len(val_bags) == 0:
        raise InputDomainError("Training needs non-empty train and val splits.")

    n_domains = config.n_domains or infer_domain_count(train_bags)
    model = DcamilNet(config.model_config(n_domains))
    optimizer = torch.optim.SGD(
        model.parameters(),
        lr=config.learning_rate,
        momentum=config.momentum,
    )
    record = RunRecord(config=config)
    best_state = None

    log_path = None
    if out_dir is not None:
        out_dir = ensure_directory(out_dir)
        log_path = out_dir / TRAIN_LOG_FILENAME
        if log_path.exists():
            log_path.unlink()

    for epoch in range(1, config.epochs + 1):
        l1, l2, l3, total = train_epoch(model, optimizer, train_bags, epoch, config)
        accuracies = head_accuracies(model, val_bags)
        epoch_record = EpochRecord(
            epoch=epoch,
            l1=l1,
            l2=l2,
            l3=l3,
            total=total,
            val_acc_h1=accuracies["h1"],
            val_acc_h2=accuracies.get("h2"),
        )
        record.epochs.append(epoch_record)
        if log_path is not None:
            append_csv_row(log_path, TRAIN_LOG_HEADER, epoch_record.log_row())

        log_info = (
            f"Epoch {epoch}/{config.epochs}: L1 {l1:.4f}, L2 {l2:.4f}, L3 {l3:.4f}, "
            f"total {total:.4f}, val acc {accuracies}."
        )
        logging.info(log_info)

        improved = (
            record.best_epoch is None
            or epoch_record.best_val_accuracy > record.best_val_accuracy
        )
        if improved:
            record.best_epoch = epoch
            best_state = copy.deepcopy(model.state_dict())
            if out_dir is not None:
                record.checkpoint = save_checkpoint(
                    model,
                    out_dir / BEST_CHECKPOINT_FILENAME,
                    extra={
                        "epoch": epoch,
                        "val_acc_h1": epoch_record.val_acc_h1,
                        "val_acc_h2": epoch_record.val_acc_h2,
                    },
                )
        if on_epoch is not None:
            on_epoch(epoch_record)

    model.load_state_dict(best_state)
    model.eval()
    record.model = model
    if out_dir is not None:
        record.write_stability_csv(out_dir / STABILITY_FILENAME)

    log_info = (
        f"Best epoch {record.best_epoch} with validation accuracy "
        f"{record.best_val_accuracy:.4f} ({record.best_head})."
    )
    logging.info(log_info)
    return record
