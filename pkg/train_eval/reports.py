# -*- coding: utf-8 -*-
"""Per-instance attention tables for figure generation."""

# Standard Library
from dataclasses import dataclass
from typing import Optional

# 3rd-party
import numpy as np
import torch

# Project
from common.exceptions import InputDomainError
from common.utils import format_float
from common.utils import write_csv_rows
from dcamil.networks import forward_bag

# Local
from .constants import ATTENTION_HEADER


@dataclass(frozen=True)
class AttentionRow:
    """Attention each head paid one instance, next to its ground truth label."""

    bag_id: str
    bag_label: int
    instance: int
    row: int
    col: int
    instance_label: int
    att1: float
    att2: Optional[float]
    p_h1: float
    p_h2: Optional[float]

    def cells(self):  # noqa: D102
        optional = ["" if v is None else format_float(v) for v in (self.att2, self.p_h2)]
        return [
            self.bag_id,
            self.bag_label,
            self.instance,
            self.row,
            self.col,
            self.instance_label,
            format_float(self.att1),
            optional[0],
            format_float(self.p_h1),
            optional[1],
        ]


def attention_report(model, bag):
    """One AttentionRow per instance of a bag with known instance labels."""
    if bag.instance_labels is None:
        raise InputDomainError(
            f"Bag {bag.bag_id} has no instance labels; attention can only be checked against "
            f"ground truth on synthetic bags.",
        )
    model.eval()
    with torch.no_grad():
        output = forward_bag(model, bag)
    scores = output.positive_scores
    att2 = output.att2.tolist() if output.att2 is not None else [None] * bag.size
    return [
        AttentionRow(
            bag_id=bag.bag_id,
            bag_label=bag.label,
            instance=index,
            row=bag.positions[index][0],
            col=bag.positions[index][1],
            instance_label=int(bag.instance_labels[index]),
            att1=float(output.att1[index]),
            att2=att2[index],
            p_h1=scores["h1"],
            p_h2=scores.get("h2"),
        )
        for index in range(bag.size)
    ]


def attention_reports(model, bags):
    """Rows of every bag, in order."""
    rows = []
    for bag in bags:
        rows.extend(attention_report(model, bag))
    return rows


def write_attention_csv(rows, path):  # noqa: D103
    return write_csv_rows(path, ATTENTION_HEADER, [row.cells() for row in rows])


@dataclass(frozen=True)
class AttentionSummary:
    """Mean attention on positive and on negative instances of positive bags."""

    head: str
    mean_positive: float
    mean_negative: float
    n_positive: int
    n_negative: int

    @property
    def gap(self):  # noqa: D102
        return self.mean_positive - self.mean_negative


def summarize_attention(rows):
    """
    {head: AttentionSummary} over the rows of positive bags.

    Heads without a positive or a negative instance among those rows are left out.
    """
    rows = [row for row in rows if row.bag_label == 1]
    summaries = {}
    for head, attribute in (("h1", "att1"), ("h2", "att2")):
        positive = [getattr(r, attribute) for r in rows if r.instance_label == 1]
        negative = [getattr(r, attribute) for r in rows if r.instance_label == 0]
        if not positive or not negative or positive[0] is None:
            continue
        summaries[head] = AttentionSummary(
            head=head,
            mean_positive=float(np.mean(positive)),
            mean_negative=float(np.mean(negative)),
            n_positive=len(positive),
            n_negative=len(negative),
        )
    return summaries
