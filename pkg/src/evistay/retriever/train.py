"""Retriever training: Adam with linear warmup, early stopping on validation
evidence macro-F1, class-weighted multi-task loss."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np
import torch

from evistay.corpus.records import Paragraph
from evistay.labels import EVIDENCE_LABELS, SA_LABELS, SI_LABELS
from evistay.metrics.confusion import confusion_matrix, per_class_prf
from evistay.retriever.encoder import ToyEncoderConfig
from evistay.retriever.loss import multitask_loss
from evistay.retriever.model import RetrieverModel, build_toy_retriever
from evistay.retriever.weights import compute_class_weights


@dataclass
class RetrieverTrainConfig:
    learning_rate: float = 2e-5
    warmup_steps: int = 2000
    adam_epsilon: float = 1e-8
    batch_size: int = 16
    max_epochs: int = 10
    patience: int = 3
    gamma: float = 2.5
    alpha: float = 1.1
    beta: float = 1.5
    seed: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TrainedRetriever:
    model: RetrieverModel
    class_weights: dict[str, dict[str, float]]
    history: list[dict] = field(default_factory=list)
    best_epoch: int = -1


def _label_arrays(paragraphs: list[Paragraph]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    evi = np.array([EVIDENCE_LABELS.index(p.evidence) for p in paragraphs])
    sa = np.array([SA_LABELS.index(p.sa_label) for p in paragraphs])
    si = np.array([SI_LABELS.index(p.si_label) for p in paragraphs])
    return evi, sa, si


def _counts(indices: np.ndarray, labels: tuple[str, ...]) -> dict[str, int]:
    return {label: int((indices == i).sum()) for i, label in enumerate(labels)}


def evidence_macro_f1(model: RetrieverModel, paragraphs: list[Paragraph], batch_size: int = 128) -> float:
    evi_probs, _, _ = model.classify_batch([p.text for p in paragraphs], batch_size)
    pred = [EVIDENCE_LABELS[i] for i in evi_probs.argmax(axis=1)]
    gold = [p.evidence for p in paragraphs]
    matrix = confusion_matrix(gold, pred, EVIDENCE_LABELS)
    return per_class_prf(matrix).overall()[2]


def _warmup_factor(step: int, warmup_steps: int) -> float:
    if warmup_steps <= 0:
        return 1.0
    return min(1.0, (step + 1) / warmup_steps)


def train_retriever(
    train_paragraphs: list[Paragraph],
    val_paragraphs: list[Paragraph],
    encoder_config: ToyEncoderConfig | None = None,
    config: RetrieverTrainConfig | None = None,
) -> TrainedRetriever:
    """Train on (already down-sampled) training paragraphs; returns the model
    restored to its best-validation checkpoint plus the per-epoch history."""
    config = config or RetrieverTrainConfig()
    if not train_paragraphs:
        raise ValueError("empty training set")

    evi_idx, sa_idx, si_idx = _label_arrays(train_paragraphs)
    class_weights = {
        "evidence": compute_class_weights(_counts(evi_idx, EVIDENCE_LABELS), config.gamma),
        "sa": compute_class_weights(_counts(sa_idx, SA_LABELS), config.gamma),
        "si": compute_class_weights(_counts(si_idx, SI_LABELS), config.gamma),
    }
    w_evi = torch.tensor([class_weights["evidence"][l] for l in EVIDENCE_LABELS], dtype=torch.float64)
    w_sa = torch.tensor([class_weights["sa"][l] for l in SA_LABELS], dtype=torch.float64)
    w_si = torch.tensor([class_weights["si"][l] for l in SI_LABELS], dtype=torch.float64)

    model = build_toy_retriever(encoder_config, seed=config.seed)
    optimizer = torch.optim.Adam(
        model.parameters(), lr=config.learning_rate, eps=config.adam_epsilon
    )

    texts = [p.text for p in train_paragraphs]
    rng = np.random.default_rng(config.seed)
    gold_evi = torch.from_numpy(evi_idx)
    gold_sa = torch.from_numpy(sa_idx)
    gold_si = torch.from_numpy(si_idx)

    history: list[dict] = []
    best_state = None
    best_f1 = -1.0
    best_epoch = -1
    step = 0
    for epoch in range(config.max_epochs):
        model.train()
        order = rng.permutation(len(train_paragraphs))
        epoch_loss = 0.0
        n_batches = 0
        for start in range(0, len(order), config.batch_size):
            batch = order[start : start + config.batch_size]
            batch_texts = [texts[i] for i in batch]
            ids, mask = model.encoder.tokenize_batch(batch_texts)
            logits_evi, logits_sa, logits_si = model.forward_ids(ids, mask)
            loss = multitask_loss(
                logits_evi,
                logits_sa,
                logits_si,
                gold_evi[batch],
                gold_sa[batch],
                gold_si[batch],
                w_evi,
                w_sa,
                w_si,
                alpha=config.alpha,
                beta=config.beta,
            )
            optimizer.zero_grad()
            loss.backward()
            factor = _warmup_factor(step, config.warmup_steps)
            for group in optimizer.param_groups:
                group["lr"] = config.learning_rate * factor
            optimizer.step()
            step += 1
            epoch_loss += float(loss.detach())
            n_batches += 1

        val_f1 = evidence_macro_f1(model, val_paragraphs) if val_paragraphs else 0.0
        history.append(
            {
                "epoch": epoch,
                "train_loss": epoch_loss / max(n_batches, 1),
                "val_evidence_macro_f1": val_f1,
            }
        )
        if val_f1 > best_f1:
            best_f1 = val_f1
            best_epoch = epoch
            best_state = copy.deepcopy(model.state_dict())
        elif epoch - best_epoch >= config.patience:
            break

    if best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return TrainedRetriever(
        model=model, class_weights=class_weights, history=history, best_epoch=best_epoch
    )
