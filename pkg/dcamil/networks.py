# -*- coding: utf-8 -*-
"""
The DCAMIL network.

A shared instance encoder feeds two independently initialised branches. Each branch
projects instance features to embeddings, weights the instances with attention and
classifies the pooled bag embedding. In cross mode each branch is weighted by its
peer's attention module.
"""

# Standard Library
import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional
from typing import Tuple

# 3rd-party
import torch
import torch.nn as nn
import torchvision

# Project
from common.constants import PATCH_CHANNELS
from common.constants import PATCH_SIZE
from common.exceptions import ImplementationError
from common.exceptions import InputDomainError
from common.utils import require_artifact
from synthdata.constants import DEFAULT_DOMAIN_COUNT

# Local
from .constants import ATTENTION_MODES
from .constants import DEFAULT_ATTENTION_DIM
from .constants import DEFAULT_BRANCH_SEEDS
from .constants import DEFAULT_DOMAIN_HIDDEN_DIM
from .constants import DEFAULT_DOMAIN_SEED
from .constants import DEFAULT_EMBEDDING_DIM
from .constants import DEFAULT_ENCODER_SEED
from .constants import ENCODER_PRESETS
from .constants import N_CLASSES
from .constants import RESNET_FEATURE_DIMS
from .constants import SMALL_ENCODER_WIDTHS

ATTENTION_MODE_NAMES = [mode for mode, _ in ATTENTION_MODES]
ENCODER_PRESET_NAMES = [preset for preset, _ in ENCODER_PRESETS]


@dataclass(frozen=True)
class ModelConfig:
    """
    Shapes, seeds and switches of a DcamilNet.

    dual turns the second branch on (DN). Cross attention needs both branches.
    """

    encoder: str = "small"
    encoder_widths: Tuple[int, ...] = SMALL_ENCODER_WIDTHS
    embedding_dim: int = DEFAULT_EMBEDDING_DIM
    attention_dim: int = DEFAULT_ATTENTION_DIM
    n_domains: int = DEFAULT_DOMAIN_COUNT
    domain_hidden_dim: int = DEFAULT_DOMAIN_HIDDEN_DIM
    dual: bool = True
    attention_mode: str = "cross"
    encoder_seed: int = DEFAULT_ENCODER_SEED
    branch_seeds: Tuple[int, int] = DEFAULT_BRANCH_SEEDS
    domain_seed: int = DEFAULT_DOMAIN_SEED
    pretrained_weights: str = ""

    def __post_init__(self):  # noqa: D105
        if self.encoder not in ENCODER_PRESET_NAMES:
            raise InputDomainError(
                f"Unknown encoder preset {self.encoder!r}; choose from {ENCODER_PRESET_NAMES}.",
            )
        if self.attention_mode not in ATTENTION_MODE_NAMES:
            raise InputDomainError(
                f"Unknown attention mode {self.attention_mode!r}; "
                f"choose from {ATTENTION_MODE_NAMES}.",
            )
        if self.attention_mode == "cross" and not self.dual:
            raise InputDomainError("Cross attention needs the second branch (DN).")
        if min(self.embedding_dim, self.attention_dim, self.domain_hidden_dim) < 1:
            raise InputDomainError("Embedding, attention and domain hidden sizes must be >= 1.")
        if self.n_domains < 1:
            raise InputDomainError(f"At least one domain is needed, got {self.n_domains}.")
        if len(self.branch_seeds) != 2:
            raise InputDomainError(f"Two branch seeds are needed, got {self.branch_seeds}.")

    @property
    def feature_dim(self):
        """Q, the encoder output size."""
        if self.encoder == "small":
            return self.encoder_widths[-1]
        return RESNET_FEATURE_DIMS[self.encoder]

    def as_dict(self):
        """Plain dict (tuples as lists) for checkpoints and JSON."""
        values = dataclasses.asdict(self)
        values["encoder_widths"] = list(self.encoder_widths)
        values["branch_seeds"] = list(self.branch_seeds)
        return values

    @classmethod
    def from_dict(cls, values):  # noqa: D102
        values = dict(values)
        values["encoder_widths"] = tuple(values["encoder_widths"])
        values["branch_seeds"] = tuple(values["branch_seeds"])
        return cls(**values)


class SmallConvEncoder(nn.Module):
    """
    Four strided convolutions with ReLU and global average pooling.

    224 -> 56 -> 28 -> 14 -> 7 spatially; Q is the last width. No normalisation layers,
    so every instance is encoded independently of the rest of its bag.
    """

    def __init__(self, widths=SMALL_ENCODER_WIDTHS):  # noqa: D107
        super().__init__()
        layers = []
        in_channels = PATCH_CHANNELS
        for index, width in enumerate(widths):
            if index == 0:
                conv = nn.Conv2d(in_channels, width, kernel_size=7, stride=4, padding=3)
            else:
                conv = nn.Conv2d(in_channels, width, kernel_size=3, stride=2, padding=1)
            layers.extend([conv, nn.ReLU()])
            in_channels = width
        self.features = nn.Sequential(*layers)
        self.feature_dim = widths[-1]

    def forward(self, x):  # noqa: D102
        return self.features(x).mean(dim=(2, 3))


class ResNetEncoder(nn.Module):
    """A torchvision ResNet with its classification layer removed."""

    def __init__(self, preset):  # noqa: D107
        super().__init__()
        self.backbone = getattr(torchvision.models, preset)(weights=None)
        self.backbone.fc = nn.Identity()
        self.feature_dim = RESNET_FEATURE_DIMS[preset]

    def forward(self, x):  # noqa: D102
        return self.backbone(x)


def build_encoder(config, load_pretrained=True):
    """The encoder for config.encoder, with pretrained weights loaded if configured."""
    if config.encoder == "small":
        encoder = SmallConvEncoder(config.encoder_widths)
    elif config.encoder in RESNET_FEATURE_DIMS:
        encoder = ResNetEncoder(config.encoder)
    else:
        raise ImplementationError(f"No encoder is registered for preset {config.encoder!r}.")

    if load_pretrained and config.pretrained_weights:
        path = require_artifact(config.pretrained_weights, "pretrained encoder weights")
        state = torch.load(path, map_location="cpu", weights_only=True)
        target = encoder.backbone if isinstance(encoder, ResNetEncoder) else encoder
        result = target.load_state_dict(state, strict=False)
        log_info = (
            f"Loaded encoder weights from {path} "
            f"({len(result.missing_keys)} missing, {len(result.unexpected_keys)} unexpected keys)."
        )
        logging.info(log_info)
    return encoder


class Branch(nn.Module):
    """
    One classifier branch.

    attention_hidden holds W_j1 (d x a) and attention_out W_j2 (a x 1); neither has a bias.
    """

    def __init__(self, feature_dim, embedding_dim, attention_dim):  # noqa: D107
        super().__init__()
        self.projection = nn.Linear(feature_dim, embedding_dim)
        self.attention_hidden = nn.Linear(embedding_dim, attention_dim, bias=False)
        self.attention_out = nn.Linear(attention_dim, 1, bias=False)
        self.classifier = nn.Linear(embedding_dim, N_CLASSES)

    def embed(self, features):
        """K x Q features -> K x d embeddings."""
        return torch.tanh(self.projection(features))

    def attention_logits(self, embeddings):
        """K x d embeddings -> K unnormalised attention scores."""
        return self.attention_out(torch.tanh(self.attention_hidden(embeddings))).squeeze(-1)

    def classify(self, bag_embedding):
        """Class probabilities of a pooled bag embedding."""
        return torch.softmax(self.classifier(bag_embedding), dim=-1)


class DomainHead(nn.Module):
    """Three fully connected layers from instance features to domain logits."""

    def __init__(self, feature_dim, hidden_dim, n_domains):  # noqa: D107
        super().__init__()
        self.layers = nn.Sequential(
            nn.Linear(feature_dim, hidden_dim),
            nn.ReLU(),
            nn.Linear(hidden_dim, hidden_dim),
            nn.ReLU(),
            nn.Linear(hidden_dim, n_domains),
        )
        self.n_domains = n_domains

    def forward(self, features):  # noqa: D102
        return self.layers(features)


def seeded(seed, build):
    """Build a module with the global generator temporarily reseeded."""
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        return build()


def _check_instances(h1, h2=None):
    if h1.ndim != 2 or h1.shape[0] == 0:
        raise InputDomainError(
            f"Attention needs a K x d matrix with K >= 1, got {tuple(h1.shape)}.",
        )
    if h2 is not None and h2.shape != h1.shape:
        raise InputDomainError(
            f"Branch embeddings differ in shape: {tuple(h1.shape)} and {tuple(h2.shape)}.",
        )


def cross_attention(h1, h2, branch1, branch2):
    """
    Attention of each branch from its peer's embeddings and attention weights.

    att1 = softmax(tanh(H2 W21) W22), att2 = softmax(tanh(H1 W11) W12), over instances.
    """
    _check_instances(h1, h2)
    att1 = torch.softmax(branch2.attention_logits(h2), dim=0)
    att2 = torch.softmax(branch1.attention_logits(h1), dim=0)
    return att1, att2


def independent_attention(h1, h2, branch1, branch2):
    """Each branch attends with its own embeddings and weights."""
    _check_instances(h1, h2)
    att1 = torch.softmax(branch1.attention_logits(h1), dim=0)
    att2 = torch.softmax(branch2.attention_logits(h2), dim=0)
    return att1, att2


@dataclass
class ForwardOutput:
    """
    Everything one forward pass over a bag produces.

    Second branch fields are None when the network has a single branch.
    """

    features: torch.Tensor
    h1: torch.Tensor
    att1: torch.Tensor
    bag1: torch.Tensor
    p1: torch.Tensor
    h2: Optional[torch.Tensor] = None
    att2: Optional[torch.Tensor] = None
    bag2: Optional[torch.Tensor] = None
    p2: Optional[torch.Tensor] = None

    @property
    def positive_scores(self):
        """Positive class probability per head."""
        scores = {"h1": float(self.p1[1])}
        if self.p2 is not None:
            scores["h2"] = float(self.p2[1])
        return scores


class DcamilNet(nn.Module):
    """
    Shared encoder, one or two branches and the domain head.

    Every part is initialised from its own seed so branch diversity never depends on
    construction order. An encoder module exposing feature_dim may be passed in place
    of the configured preset.
    """

    def __init__(self, config, encoder=None, load_pretrained=True):  # noqa: D107
        super().__init__()
        self.config = config
        if encoder is None:
            encoder = seeded(config.encoder_seed, lambda: build_encoder(config, load_pretrained))
        self.encoder = encoder
        feature_dim = encoder.feature_dim

        def make_branch():
            return Branch(feature_dim, config.embedding_dim, config.attention_dim)

        self.branch1 = seeded(config.branch_seeds[0], make_branch)
        self.branch2 = seeded(config.branch_seeds[1], make_branch) if config.dual else None
        self.domain_head = seeded(
            config.domain_seed,
            lambda: DomainHead(feature_dim, config.domain_hidden_dim, config.n_domains),
        )

    @property
    def dual(self):  # noqa: D102
        return self.branch2 is not None

    @property
    def dtype(self):  # noqa: D102
        return next(self.parameters()).dtype

    def encode(self, instances):
        """K x 3 x 224 x 224 instances -> K x Q features."""
        expected = (PATCH_CHANNELS, PATCH_SIZE, PATCH_SIZE)
        if instances.ndim != 4 or tuple(instances.shape[1:]) != expected:
            raise InputDomainError(
                f"Instances must be K x {PATCH_CHANNELS} x {PATCH_SIZE} x {PATCH_SIZE}, "
                f"got {tuple(instances.shape)}.",
            )
        if instances.shape[0] == 0:
            raise InputDomainError("A bag needs at least one instance.")
        return self.encoder(instances)

    def attend(self, h1, h2, mode=None):
        """(att1, att2) for the given or configured attention mode."""
        mode = mode or self.config.attention_mode
        if mode == "cross":
            return cross_attention(h1, h2, self.branch1, self.branch2)
        if mode == "independent":
            return independent_attention(h1, h2, self.branch1, self.branch2)
        raise InputDomainError(f"Unknown attention mode {mode!r}.")

    def forward_features(self, features, mode=None):
        """Branch embeddings, attention, pooled bag embeddings and probabilities."""
        h1 = self.branch1.embed(features)
        if not self.dual:
            if mode == "cross":
                raise InputDomainError("Cross attention needs the second branch (DN).")
            _check_instances(h1)
            att1 = torch.softmax(self.branch1.attention_logits(h1), dim=0)
            bag1 = att1 @ h1
            return ForwardOutput(
                features=features,
                h1=h1,
                att1=att1,
                bag1=bag1,
                p1=self.branch1.classify(bag1),
            )

        h2 = self.branch2.embed(features)
        att1, att2 = self.attend(h1, h2, mode)
        bag1, bag2 = att1 @ h1, att2 @ h2
        return ForwardOutput(
            features=features,
            h1=h1,
            att1=att1,
            bag1=bag1,
            p1=self.branch1.classify(bag1),
            h2=h2,
            att2=att2,
            bag2=bag2,
            p2=self.branch2.classify(bag2),
        )

    def forward(self, instances, mode=None):  # noqa: D102
        return self.forward_features(self.encode(instances), mode)


def bag_to_tensor(bag, dtype=torch.float32):
    """A bag's instances as a K x 3 x 224 x 224 tensor in [0, 1]."""
    return torch.from_numpy(bag.instances).permute(0, 3, 1, 2).to(dtype)


def encode_instances(model, bag):
    """K x Q encoder features of a bag."""
    return model.encode(bag_to_tensor(bag, model.dtype))


def forward_bag(model, bag, mode=None):
    """Run the whole network on one bag."""
    return model(bag_to_tensor(bag, model.dtype), mode)
