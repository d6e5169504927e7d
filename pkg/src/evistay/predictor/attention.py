"""Multi-head self-attention stack over a set of paragraph vectors.

No positional encodings: the inputs form an evidence set, so the stack is
permutation-equivariant and the prediction slot's hidden state is invariant
under reordering of the paragraph vectors. Each layer is scaled dot-product
attention plus a position-wise feed-forward transform, both with residual
connection and layer normalization.
"""

from __future__ import annotations

import torch
from torch import nn

_KW = {"dtype": torch.float64}


class MultiHeadSelfAttention(nn.Module):
    def __init__(self, dim: int, heads: int):
        super().__init__()
        if dim % heads != 0:
            raise ValueError(f"dim {dim} must be divisible by heads {heads}")
        self.dim = dim
        self.heads = heads
        self.head_dim = dim // heads
        self.q = nn.Linear(dim, dim, **_KW)
        self.k = nn.Linear(dim, dim, **_KW)
        self.v = nn.Linear(dim, dim, **_KW)
        self.out = nn.Linear(dim, dim, **_KW)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        """x: (n, dim) -> (context (n, dim), attention weights (heads, n, n))."""
        n, _ = x.shape

        def split(proj: torch.Tensor) -> torch.Tensor:
            return proj.view(n, self.heads, self.head_dim).transpose(0, 1)

        q, k, v = split(self.q(x)), split(self.k(x)), split(self.v(x))
        scores = q @ k.transpose(-2, -1) / self.head_dim**0.5
        attn = torch.softmax(scores, dim=-1)  # rows sum to 1
        ctx = (attn @ v).transpose(0, 1).reshape(n, self.dim)
        return self.out(ctx), attn


class FeedForward(nn.Module):
    def __init__(self, dim: int, hidden: int):
        super().__init__()
        self.fc1 = nn.Linear(dim, hidden, **_KW)
        self.fc2 = nn.Linear(hidden, dim, **_KW)
        self.act = nn.GELU()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.fc2(self.act(self.fc1(x)))


class EncoderLayer(nn.Module):
    def __init__(self, dim: int, heads: int, ff_hidden: int):
        super().__init__()
        self.attention = MultiHeadSelfAttention(dim, heads)
        self.ff = FeedForward(dim, ff_hidden)
        self.norm1 = nn.LayerNorm(dim, **_KW)
        self.norm2 = nn.LayerNorm(dim, **_KW)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        ctx, attn = self.attention(x)
        x = self.norm1(x + ctx)
        x = self.norm2(x + self.ff(x))
        return x, attn


class AttentionStack(nn.Module):
    def __init__(self, dim: int, heads: int = 3, layers: int = 2, ff_hidden: int | None = None):
        super().__init__()
        ff_hidden = ff_hidden or 4 * dim
        self.layers = nn.ModuleList(EncoderLayer(dim, heads, ff_hidden) for _ in range(layers))

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, list[torch.Tensor]]:
        weights = []
        for layer in self.layers:
            x, attn = layer(x)
            weights.append(attn)
        return x, weights
