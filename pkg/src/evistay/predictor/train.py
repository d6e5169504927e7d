"""Stay-predictor training over frozen retriever encodings.

Paragraph vectors are encoded once up front (the retriever is frozen, so
they are constants); each epoch re-assembles noisy inputs per stay and
optimizes the unweighted sum of SA and SI cross-entropies on the prediction
slot. Checkpoint selection uses the validation mean of SA and SI macro-F1
computed through the real inference path (retrieve, fall back, predict).
"""

from __future__ import annotations

import copy
import warnings
import zlib
from dataclasses import dataclass, field

import numpy as np
import torch
import torch.nn.functional as F

from evistay.corpus.records import HospitalStay, Paragraph
from evistay.labels import SA_LABELS, SI_LABELS
from evistay.metrics.confusion import confusion_matrix, per_class_prf
from evistay.predictor.model import PredictorConfig, StayPredictor, build_predictor
from evistay.predictor.noise import (
    NoiseConfig,
    assemble_training_input,
    build_neutral_count_distribution,
    sample_neutral_count,
)
from evistay.retriever.model import RetrieverModel


@dataclass
class PredictorTrainConfig:
    learning_rate: float = 1e-3
    warmup_steps: int = 1200
    adam_epsilon: float = 1e-8
    batch_size: int = 8
    max_epochs: int = 30
    patience: int = 3
    seed: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TrainedPredictor:
    model: StayPredictor
    neutral_count_distribution: dict[int, float]
    history: list[dict] = field(default_factory=list)
    best_epoch: int = -1


def stay_rng(seed: int, stay_id: str) -> np.random.Generator:
    """Per-stay RNG stream, stable under iteration order."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(stay_id.encode())]))


class _VectorStore:
    """Paragraph vectors encoded once with the frozen retriever."""

    def __init__(self, retriever: RetrieverModel, paragraphs: list[Paragraph], batch_size: int = 128):
        self.index = {p.paragraph_id: i for i, p in enumerate(paragraphs)}
        matrix = retriever.encode_texts([p.text for p in paragraphs], batch_size)
        self.matrix = torch.from_numpy(np.ascontiguousarray(matrix, dtype=np.float64))

    def gather(self, paragraph_ids: list[str]) -> torch.Tensor:
        rows = [self.index[pid] for pid in paragraph_ids]
        return self.matrix[rows]


def _stay_loss(model: StayPredictor, vectors: torch.Tensor, stay: HospitalStay) -> torch.Tensor:
    sa_logits, si_logits = model(vectors)
    sa_gold = torch.tensor([SA_LABELS.index(stay.sa_label)])
    si_gold = torch.tensor([SI_LABELS.index(stay.si_label)])
    return F.cross_entropy(sa_logits.unsqueeze(0), sa_gold) + F.cross_entropy(
        si_logits.unsqueeze(0), si_gold
    )


def _macro_f1(gold: list[str], pred: list[str], labels: tuple[str, ...]) -> float:
    return per_class_prf(confusion_matrix(gold, pred, labels)).overall()[2]


def _validation_inputs(
    retriever: RetrieverModel,
    stays: list[HospitalStay],
    paragraphs_by_stay: dict[str, list[Paragraph]],
    distribution: dict[int, float],
    seed: int,
    batch_size: int = 128,
) -> dict[str, list[str]]:
    """Fixed per-stay input paragraph ids for validation-time inference."""
    all_paragraphs = [p for stay in stays for p in paragraphs_by_stay.get(stay.stay_id, [])]
    if not all_paragraphs:
        return {}
    evi_probs, _, _ = retriever.classify_batch([p.text for p in all_paragraphs], batch_size)
    predicted_yes = {
        p.paragraph_id
        for p, probs in zip(all_paragraphs, evi_probs)
        if int(probs.argmax()) == 0  # index 0 = "yes"
    }
    inputs: dict[str, list[str]] = {}
    for stay in stays:
        paragraphs = paragraphs_by_stay.get(stay.stay_id, [])
        if not paragraphs:
            continue
        retrieved = [p.paragraph_id for p in paragraphs if p.paragraph_id in predicted_yes]
        if not retrieved:
            rng = stay_rng(seed, stay.stay_id)
            x = min(sample_neutral_count(distribution, rng), len(paragraphs))
            picked = rng.choice(len(paragraphs), size=x, replace=False)
            retrieved = [paragraphs[i].paragraph_id for i in sorted(picked.tolist())]
        inputs[stay.stay_id] = retrieved
    return inputs


def train_predictor(
    train_stays: list[HospitalStay],
    val_stays: list[HospitalStay],
    paragraphs_by_stay: dict[str, list[Paragraph]],
    retriever: RetrieverModel,
    noise_config: NoiseConfig | None = None,
    config: PredictorTrainConfig | None = None,
    predictor_config: PredictorConfig | None = None,
) -> TrainedPredictor:
    """Train the stay predictor; the retriever's parameters are never touched."""
    noise_config = noise_config or NoiseConfig()
    config = config or PredictorTrainConfig()
    if not train_stays:
        raise ValueError("empty training stay set")

    missing = [
        label
        for label in SA_LABELS
        if not any(s.sa_label == label for s in train_stays)
    ]
    if missing:
        warnings.warn(f"training set has no stays with SA label(s): {missing}", stacklevel=2)

    gold_by_stay = {
        s.stay_id: [p for p in paragraphs_by_stay.get(s.stay_id, []) if p.evidence == "yes"]
        for s in train_stays + val_stays
    }
    pool_by_stay = {
        s.stay_id: [p for p in paragraphs_by_stay.get(s.stay_id, []) if p.evidence == "no"]
        for s in train_stays + val_stays
    }

    if noise_config.neutral_count_distribution:
        distribution = noise_config.neutral_count_distribution
    else:
        distribution = build_neutral_count_distribution(
            [len(gold_by_stay[s.stay_id]) for s in train_stays if not s.is_neutral]
        )

    retriever.eval()
    for param in retriever.parameters():
        param.requires_grad_(False)

    all_paragraphs = [
        p for stay in train_stays + val_stays for p in paragraphs_by_stay.get(stay.stay_id, [])
    ]
    store = _VectorStore(retriever, all_paragraphs)

    predictor_config = predictor_config or PredictorConfig(dim=retriever.dim)
    if predictor_config.dim != retriever.dim:
        raise ValueError(
            f"predictor dim {predictor_config.dim} must match retriever dim {retriever.dim}"
        )
    model = build_predictor(predictor_config, seed=config.seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate, eps=config.adam_epsilon)

    val_inputs = _validation_inputs(
        retriever, val_stays, paragraphs_by_stay, distribution, config.seed
    )

    def validation_metric() -> tuple[float, float, float]:
        if not val_inputs:
            return 0.0, 0.0, 0.0
        model.eval()
        gold_sa, gold_si, pred_sa, pred_si = [], [], [], []
        for stay in val_stays:
            ids = val_inputs.get(stay.stay_id)
            if not ids:
                continue
            record = model.predict_stay(store.gather(ids))
            gold_sa.append(stay.sa_label)
            gold_si.append(stay.si_label)
            pred_sa.append(record["sa_label"])
            pred_si.append(record["si_label"])
        sa_f1 = _macro_f1(gold_sa, pred_sa, SA_LABELS)
        si_f1 = _macro_f1(gold_si, pred_si, SI_LABELS)
        return sa_f1, si_f1, (sa_f1 + si_f1) / 2

    shuffle_rng = np.random.default_rng(config.seed)
    history: list[dict] = []
    best_state = None
    best_metric = -1.0
    best_epoch = -1
    step = 0
    for epoch in range(config.max_epochs):
        noise_rng = np.random.default_rng(np.random.SeedSequence([config.seed, 7, epoch]))
        model.train()
        order = shuffle_rng.permutation(len(train_stays))
        epoch_loss = 0.0
        n_stays = 0
        batch_losses: list[torch.Tensor] = []

        def flush() -> None:
            nonlocal step, epoch_loss
            if not batch_losses:
                return
            loss = torch.stack(batch_losses).mean()
            optimizer.zero_grad()
            loss.backward()
            factor = min(1.0, (step + 1) / config.warmup_steps) if config.warmup_steps > 0 else 1.0
            for group in optimizer.param_groups:
                group["lr"] = config.learning_rate * factor
            optimizer.step()
            step += 1
            epoch_loss += float(loss.detach()) * len(batch_losses)
            batch_losses.clear()

        for idx in order:
            stay = train_stays[idx]
            gold = gold_by_stay[stay.stay_id]
            pool = pool_by_stay[stay.stay_id]
            if not stay.is_neutral and not gold:
                warnings.warn(
                    f"skipping non-neutral stay {stay.stay_id!r} without evidence paragraphs",
                    stacklevel=2,
                )
                continue
            chosen = assemble_training_input(
                stay,
                gold,
                pool,
                NoiseConfig(
                    irrelevant_prob=noise_config.irrelevant_prob,
                    neutral_count_distribution=distribution,
                ),
                noise_rng,
            )
            if not chosen:
                continue
            vectors = store.gather([p.paragraph_id for p in chosen])
            batch_losses.append(_stay_loss(model, vectors, stay))
            n_stays += 1
            if len(batch_losses) >= config.batch_size:
                flush()
        flush()

        sa_f1, si_f1, mean_f1 = validation_metric()
        history.append(
            {
                "epoch": epoch,
                "train_loss": epoch_loss / max(n_stays, 1),
                "val_sa_macro_f1": sa_f1,
                "val_si_macro_f1": si_f1,
                "val_mean_macro_f1": mean_f1,
            }
        )
        if mean_f1 > best_metric:
            best_metric = mean_f1
            best_epoch = epoch
            best_state = copy.deepcopy(model.state_dict())
        elif epoch - best_epoch >= config.patience:
            break

    if best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return TrainedPredictor(
        model=model,
        neutral_count_distribution=distribution,
        history=history,
        best_epoch=best_epoch,
    )
