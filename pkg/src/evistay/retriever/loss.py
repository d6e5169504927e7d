"""Multi-task training loss: evidence main task plus SA and SI auxiliaries.

total = L_evi + alpha * L_SA + beta * L_SI, where each task loss is the
batch mean of per-example class-weighted negative log-likelihood and the
weight of an example is the weight of its gold label.
"""

from __future__ import annotations

import torch
import torch.nn.functional as F


def weighted_nll(logits: torch.Tensor, gold: torch.Tensor, class_weights: torch.Tensor) -> torch.Tensor:
    """Batch mean of w[gold] * (-log softmax(logits)[gold])."""
    log_probs = F.log_softmax(logits, dim=-1)
    picked = log_probs.gather(1, gold.view(-1, 1)).squeeze(1)
    return (-picked * class_weights[gold]).mean()


def multitask_loss(
    logits_evi: torch.Tensor,
    logits_sa: torch.Tensor,
    logits_si: torch.Tensor,
    gold_evi: torch.Tensor,
    gold_sa: torch.Tensor,
    gold_si: torch.Tensor,
    weights_evi: torch.Tensor,
    weights_sa: torch.Tensor,
    weights_si: torch.Tensor,
    alpha: float = 1.1,
    beta: float = 1.5,
) -> torch.Tensor:
    l_evi = weighted_nll(logits_evi, gold_evi, weights_evi)
    l_sa = weighted_nll(logits_sa, gold_sa, weights_sa)
    l_si = weighted_nll(logits_si, gold_si, weights_si)
    return l_evi + alpha * l_sa + beta * l_si
