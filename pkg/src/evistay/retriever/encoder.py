"""Paragraph encoders.

Any ``nn.Module`` mapping a list of texts to a (batch, dim) tensor with a
fixed ``dim`` satisfies the encoder contract; in evaluation mode identical
text must produce identical vectors. ``ToyEncoder`` is the self-contained
reference implementation used by the test and acceptance suites: hashed
token embeddings through one self-attention layer, mean-pooled.
"""

from __future__ import annotations

import re
import zlib
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import torch
from torch import nn

_TOKEN_RE = re.compile(r"[0-9a-z]+")


def hash_tokenize(text: str, vocab_size: int) -> list[int]:
    """Deterministic hashing tokenizer; id 0 is reserved for padding."""
    return [
        zlib.crc32(tok.encode("utf-8")) % (vocab_size - 1) + 1
        for tok in _TOKEN_RE.findall(text.lower())
    ]


@runtime_checkable
class Encoder(Protocol):
    dim: int

    def __call__(self, texts: list[str]) -> torch.Tensor: ...

    def train(self, mode: bool = True): ...

    def eval(self): ...


@dataclass
class ToyEncoderConfig:
    dim: int = 64
    vocab_size: int = 4096
    heads: int = 2
    max_tokens: int = 128


class ToyEncoder(nn.Module):
    """Token-embedding mean with one self-attention layer, in float64."""

    def __init__(self, config: ToyEncoderConfig | None = None):
        super().__init__()
        self.config = config or ToyEncoderConfig()
        dim = self.config.dim
        if dim % self.config.heads != 0:
            raise ValueError(f"dim {dim} not divisible by heads {self.config.heads}")
        self.dim = dim
        kw = {"dtype": torch.float64}
        self.embedding = nn.Embedding(self.config.vocab_size, dim, padding_idx=0, **kw)
        self.q = nn.Linear(dim, dim, **kw)
        self.k = nn.Linear(dim, dim, **kw)
        self.v = nn.Linear(dim, dim, **kw)
        self.out = nn.Linear(dim, dim, **kw)
        self.norm = nn.LayerNorm(dim, **kw)

    def tokenize_batch(self, texts: list[str]) -> tuple[torch.Tensor, torch.Tensor]:
        """Pad a batch of texts to (batch, T) ids plus a boolean mask."""
        ids = []
        for text in texts:
            if not text or not text.strip():
                raise ValueError("cannot encode empty text")
            toks = hash_tokenize(text, self.config.vocab_size)[: self.config.max_tokens]
            if not toks:
                raise ValueError(f"text has no encodable tokens: {text!r}")
            ids.append(toks)
        max_len = max(len(t) for t in ids)
        batch = torch.zeros((len(ids), max_len), dtype=torch.long)
        for i, toks in enumerate(ids):
            batch[i, : len(toks)] = torch.tensor(toks, dtype=torch.long)
        return batch, batch != 0

    def encode_ids(self, ids: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        x = self.embedding(ids)  # (b, T, d)
        b, t, d = x.shape
        h = self.config.heads
        hd = d // h

        def split(proj: torch.Tensor) -> torch.Tensor:
            return proj.view(b, t, h, hd).transpose(1, 2)  # (b, h, T, hd)

        q, k, v = split(self.q(x)), split(self.k(x)), split(self.v(x))
        scores = q @ k.transpose(-2, -1) / hd**0.5  # (b, h, T, T)
        scores = scores.masked_fill(~mask[:, None, None, :], float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        ctx = (attn @ v).transpose(1, 2).reshape(b, t, d)
        x = self.norm(x + self.out(ctx))
        x = x * mask[:, :, None]
        return x.sum(dim=1) / mask.sum(dim=1, keepdim=True)

    def forward(self, texts: list[str]) -> torch.Tensor:
        ids, mask = self.tokenize_batch(texts)
        return self.encode_ids(ids, mask)
