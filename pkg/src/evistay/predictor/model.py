"""Stay-level predictor: a learnable prediction vector prepended to the
paragraph vectors, an attention stack, and SA/SI inference heads on the
prediction slot's hidden state."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import torch
from torch import nn

from evistay.checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from evistay.labels import SA_LABELS, SI_LABELS
from evistay.predictor.attention import AttentionStack


@dataclass
class PredictorConfig:
    dim: int = 64
    heads: int = 3
    layers: int = 2
    ff_hidden: int | None = None

    def __post_init__(self) -> None:
        if self.dim % self.heads != 0:
            raise ValueError(f"dim {self.dim} must be divisible by heads {self.heads}")


class StayPredictor(nn.Module):
    sa_labels = SA_LABELS
    si_labels = SI_LABELS

    def __init__(self, config: PredictorConfig):
        super().__init__()
        self.config = config
        dim = config.dim
        # small seeded init so the prediction slot starts near the input scale
        self.v0 = nn.Parameter(torch.randn(dim, dtype=torch.float64) / dim**0.5)
        self.stack = AttentionStack(dim, config.heads, config.layers, config.ff_hidden)
        self.sa_head = nn.Linear(dim, len(SA_LABELS), dtype=torch.float64)
        self.si_head = nn.Linear(dim, len(SI_LABELS), dtype=torch.float64)

    def attention_forward(
        self, vectors: torch.Tensor, return_weights: bool = False
    ) -> torch.Tensor | tuple[torch.Tensor, list[torch.Tensor]]:
        """[v0; v1..vn] -> hidden states (n+1, dim)."""
        if vectors.ndim != 2 or vectors.shape[1] != self.config.dim:
            raise ValueError(
                f"expected (n, {self.config.dim}) paragraph vectors, got {tuple(vectors.shape)}"
            )
        if vectors.shape[0] < 1:
            raise ValueError("need at least one paragraph vector")
        x = torch.cat([self.v0.unsqueeze(0), vectors.to(torch.float64)], dim=0)
        hidden, weights = self.stack(x)
        if return_weights:
            return hidden, weights
        return hidden

    def forward(self, vectors: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        hidden = self.attention_forward(vectors)
        h0 = hidden[0]
        return self.sa_head(h0), self.si_head(h0)

    @torch.no_grad()
    def predict_stay(self, vectors: np.ndarray | torch.Tensor) -> dict[str, Any]:
        """SA and SI labels with full probability vectors for one stay."""
        if isinstance(vectors, np.ndarray):
            vectors = torch.from_numpy(np.ascontiguousarray(vectors, dtype=np.float64))
        was_training = self.training
        self.eval()
        sa_logits, si_logits = self.forward(vectors)
        if was_training:
            self.train()
        sa_probs = torch.softmax(sa_logits, dim=-1).numpy()
        si_probs = torch.softmax(si_logits, dim=-1).numpy()
        return {
            "sa_label": SA_LABELS[int(sa_probs.argmax())],
            "sa_probs": [float(x) for x in sa_probs],
            "si_label": SI_LABELS[int(si_probs.argmax())],
            "si_probs": [float(x) for x in si_probs],
        }


def build_predictor(config: PredictorConfig, seed: int = 0) -> StayPredictor:
    torch.manual_seed(seed)
    return StayPredictor(config)


def save_predictor(
    path: str | Path,
    model: StayPredictor,
    train_config: dict[str, Any],
    retriever_checkpoint_sha256: str,
    extra: dict[str, Any] | None = None,
) -> None:
    params = {k: v.detach().numpy() for k, v in model.state_dict().items()}
    metadata = {
        "dim": model.config.dim,
        "heads": model.config.heads,
        "layers": model.config.layers,
        "ff_hidden": model.config.ff_hidden,
        "class_orderings": {"sa": list(SA_LABELS), "si": list(SI_LABELS)},
        "train_config": train_config,
        "retriever_checkpoint_sha256": retriever_checkpoint_sha256,
        **(extra or {}),
    }
    save_checkpoint(path, "predictor", params, metadata)


def load_predictor(path: str | Path) -> tuple[StayPredictor, Checkpoint]:
    ckpt = load_checkpoint(path)
    if ckpt.kind != "predictor":
        raise ValueError(f"{path}: expected a predictor checkpoint, found {ckpt.kind!r}")
    config = PredictorConfig(
        dim=ckpt.metadata["dim"],
        heads=ckpt.metadata["heads"],
        layers=ckpt.metadata["layers"],
        ff_hidden=ckpt.metadata["ff_hidden"],
    )
    model = StayPredictor(config)
    model.load_state_dict({k: torch.from_numpy(v.copy()) for k, v in ckpt.params.items()})
    model.eval()
    return model, ckpt
