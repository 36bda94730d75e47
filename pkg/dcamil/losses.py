# -*- coding: utf-8 -*-
"""
Training losses.

classification_loss sums the cross entropy of both heads, contrastive_loss keeps the
two branches' views of each instance close, and domain_loss trains the domain head
through a gradient reversal so the encoder unlearns the acquisition style.
"""

# Standard Library
import logging
import math
from dataclasses import dataclass

# 3rd-party
import torch
import torch.nn.functional as F

# Project
from common.constants import PROBABILITY_FLOOR
from common.exceptions import InputDomainError

# Local
from .constants import DEFAULT_ALPHA
from .constants import DEFAULT_BETA
from .constants import DEFAULT_GAMMA
from .constants import DEFAULT_LAMBDA_GRL
from .constants import DEFAULT_TAU


@dataclass(frozen=True)
class LossWeights:
    """alpha, beta and gamma weight L1, L2 and L3; tau is the contrastive temperature."""

    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA
    tau: float = DEFAULT_TAU
    lambda_grl: float = DEFAULT_LAMBDA_GRL

    def __post_init__(self):  # noqa: D105
        for name in ("alpha", "beta", "gamma", "tau", "lambda_grl"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise InputDomainError(f"Loss weight {name} must be finite and >= 0, got {value}.")
        if self.tau <= 0:
            raise InputDomainError(f"Temperature tau must be > 0, got {self.tau}.")


def _true_class_log_probabilities(probabilities, labels, head):
    true_class = probabilities.gather(1, labels[:, None]).squeeze(1)
    if bool((true_class < PROBABILITY_FLOOR).any()):
        logging.warning(
            f"Head {head} gave the true class a probability below {PROBABILITY_FLOOR}; "
            f"clamped before taking the log.",
        )
    return torch.log(true_class.clamp(min=PROBABILITY_FLOOR))


def classification_loss(p1, p2, labels):
    """
    Mean over bags of the summed head cross entropies.

    p1 and p2 are N x 2 probabilities; p2 is None for a single-branch network.
    """
    labels = torch.as_tensor(labels, dtype=torch.long)
    if p1.ndim != 2 or p1.shape[0] == 0:
        raise InputDomainError(f"Need an N x 2 batch with N >= 1, got {tuple(p1.shape)}.")
    if labels.shape != (p1.shape[0],):
        raise InputDomainError(f"{p1.shape[0]} bags but {tuple(labels.shape)} labels.")
    log_probabilities = _true_class_log_probabilities(p1, labels, "h1")
    if p2 is not None:
        log_probabilities = log_probabilities + _true_class_log_probabilities(p2, labels, "h2")
    return -log_probabilities.mean()


def contrastive_loss(h1, h2, tau=DEFAULT_TAU):
    """
    Normalised temperature-scaled cross entropy between the branch embeddings of a bag.

    Row i of H1 and row i of H2 are a positive pair; every other row of either view is a
    negative. Similarity is cosine over tau, and each denominator runs over the 2K - 1
    embeddings other than the anchor. Returns the sum over instances of the mean of the
    two directed terms.
    """
    if h1.shape != h2.shape or h1.ndim != 2:
        raise InputDomainError(
            f"Branch embeddings must be matching K x d matrices, got {tuple(h1.shape)} "
            f"and {tuple(h2.shape)}.",
        )
    if tau <= 0:
        raise InputDomainError(f"Temperature tau must be > 0, got {tau}.")
    size = h1.shape[0]
    if size < 2:
        logging.warning(f"Contrastive loss needs K >= 2 for negatives, got K={size}; using 0.")
        return h1.new_zeros(())

    embeddings = F.normalize(torch.cat([h1, h2]), dim=1)
    similarity = embeddings @ embeddings.T / tau
    self_pairs = torch.eye(2 * size, dtype=torch.bool, device=similarity.device)
    similarity = similarity.masked_fill(self_pairs, float("-inf"))
    log_probabilities = similarity - torch.logsumexp(similarity, dim=1, keepdim=True)

    index = torch.arange(size, device=similarity.device)
    first_to_second = -log_probabilities[index, index + size]
    second_to_first = -log_probabilities[index + size, index]
    return (0.5 * (first_to_second + second_to_first)).sum()


class GradientReversal(torch.autograd.Function):
    """Identity going forward; the gradient is negated and scaled by lambda going back."""

    @staticmethod
    def forward(ctx, features, lambda_grl):  # noqa: D102
        ctx.lambda_grl = lambda_grl
        return features.view_as(features)

    @staticmethod
    def backward(ctx, grad_output):  # noqa: D102
        return grad_output.neg() * ctx.lambda_grl, None


def grad_reverse(features, lambda_grl=DEFAULT_LAMBDA_GRL):  # noqa: D103
    return GradientReversal.apply(features, lambda_grl)


def domain_loss(features, domain_labels, head, lambda_grl=DEFAULT_LAMBDA_GRL):
    """
    Sum over bags of the mean instance cross entropy of the domain head.

    features is a list of K x Q tensors, one per bag. They pass through grad_reverse, so
    minimising this trains the head to find domains and the encoder to hide them.
    """
    features = list(features)
    domain_labels = [int(domain) for domain in domain_labels]
    if len(features) != len(domain_labels):
        raise InputDomainError(f"{len(features)} bags but {len(domain_labels)} domain labels.")
    total = None
    for bag_features, domain in zip(features, domain_labels):
        if not 0 <= domain < head.n_domains:
            raise InputDomainError(f"Domain {domain} is outside [0, {head.n_domains}).")
        logits = head(grad_reverse(bag_features, lambda_grl))
        target = torch.full((bag_features.shape[0],), domain, dtype=torch.long)
        loss = F.cross_entropy(logits, target)
        total = loss if total is None else total + loss
    if total is None:
        raise InputDomainError("Domain loss needs at least one bag.")
    return total


def total_loss(l1, l2, l3, weights):
    """alpha L1 + beta L2 + gamma L3."""
    return weights.alpha * l1 + weights.beta * l2 + weights.gamma * l3
