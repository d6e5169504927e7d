"""The paragraph classifier: shared encoder plus three affine heads."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
import torch
from torch import nn

from evistay.checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from evistay.labels import EVIDENCE_LABELS, SA_LABELS, SI_LABELS
from evistay.retriever.encoder import ToyEncoder, ToyEncoderConfig


class RetrieverModel(nn.Module):
    """Encoder output feeds an evidence (2-way), SA (3-way) and SI (3-way) head."""

    evidence_labels = EVIDENCE_LABELS
    sa_labels = SA_LABELS
    si_labels = SI_LABELS

    def __init__(self, encoder: nn.Module):
        super().__init__()
        self.encoder = encoder
        dim = encoder.dim
        kw = {"dtype": torch.float64}
        self.head_evidence = nn.Linear(dim, len(EVIDENCE_LABELS), **kw)
        self.head_sa = nn.Linear(dim, len(SA_LABELS), **kw)
        self.head_si = nn.Linear(dim, len(SI_LABELS), **kw)

    @property
    def dim(self) -> int:
        return self.encoder.dim

    def forward(self, texts: list[str]) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
        vec = self.encoder(texts)
        return self.head_evidence(vec), self.head_sa(vec), self.head_si(vec)

    def forward_ids(self, ids: torch.Tensor, mask: torch.Tensor):
        vec = self.encoder.encode_ids(ids, mask)
        return self.head_evidence(vec), self.head_sa(vec), self.head_si(vec)

    @torch.no_grad()
    def encode_texts(self, texts: list[str], batch_size: int = 64) -> np.ndarray:
        """Paragraph vectors in evaluation mode (used by the stay predictor)."""
        was_training = self.training
        self.eval()
        chunks = [
            self.encoder(texts[i : i + batch_size]).numpy()
            for i in range(0, len(texts), batch_size)
        ]
        if was_training:
            self.train()
        return np.concatenate(chunks, axis=0)

    @torch.no_grad()
    def classify_batch(
        self, texts: list[str], batch_size: int = 64
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Probability vectors (evidence, SA, SI) for each text."""
        was_training = self.training
        self.eval()
        evi, sa, si = [], [], []
        for i in range(0, len(texts), batch_size):
            le, lsa, lsi = self.forward(texts[i : i + batch_size])
            evi.append(torch.softmax(le, dim=-1).numpy())
            sa.append(torch.softmax(lsa, dim=-1).numpy())
            si.append(torch.softmax(lsi, dim=-1).numpy())
        if was_training:
            self.train()
        return np.concatenate(evi), np.concatenate(sa), np.concatenate(si)

    def classify_paragraph(self, text: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not text or not text.strip():
            raise ValueError("cannot classify empty text")
        evi, sa, si = self.classify_batch([text])
        return evi[0], sa[0], si[0]


def build_toy_retriever(encoder_config: ToyEncoderConfig | None = None, seed: int = 0) -> RetrieverModel:
    torch.manual_seed(seed)
    return RetrieverModel(ToyEncoder(encoder_config))


def save_retriever(
    path: str | Path, model: RetrieverModel, train_config: dict[str, Any], extra: dict[str, Any] | None = None
) -> None:
    if not isinstance(model.encoder, ToyEncoder):
        raise ValueError("only toy-encoder retrievers are serializable in this container")
    params = {k: v.detach().numpy() for k, v in model.state_dict().items()}
    metadata = {
        "dim": model.dim,
        "encoder": {"type": "toy", **model.encoder.config.__dict__},
        "class_orderings": {
            "evidence": list(EVIDENCE_LABELS),
            "sa": list(SA_LABELS),
            "si": list(SI_LABELS),
        },
        "train_config": train_config,
        **(extra or {}),
    }
    save_checkpoint(path, "retriever", params, metadata)


def load_retriever(path: str | Path) -> tuple[RetrieverModel, Checkpoint]:
    ckpt = load_checkpoint(path)
    if ckpt.kind != "retriever":
        raise ValueError(f"{path}: expected a retriever checkpoint, found {ckpt.kind!r}")
    enc_meta = dict(ckpt.metadata["encoder"])
    if enc_meta.pop("type") != "toy":
        raise ValueError(f"{path}: unsupported encoder type in checkpoint")
    model = RetrieverModel(ToyEncoder(ToyEncoderConfig(**enc_meta)))
    state = {k: torch.from_numpy(v.copy()) for k, v in ckpt.params.items()}
    model.load_state_dict(state)
    model.eval()
    return model, ckpt
