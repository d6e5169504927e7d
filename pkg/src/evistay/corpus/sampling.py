"""Down-sampling of no-evidence paragraphs for retriever training."""

from __future__ import annotations

import numpy as np

from evistay.corpus.records import Paragraph


def downsample_no_evidence(
    paragraphs: list[Paragraph], fraction: float = 0.10, seed: int = 0
) -> list[Paragraph]:
    """Remove floor(fraction * n_no) no-evidence paragraphs uniformly at random.

    Evidence paragraphs are always retained and the surviving paragraphs keep
    their original order. Deterministic for a given seed.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    no_indices = [i for i, p in enumerate(paragraphs) if p.evidence == "no"]
    n_remove = int(fraction * len(no_indices))
    if n_remove == 0:
        return list(paragraphs)
    rng = np.random.default_rng(seed)
    removed = set(rng.choice(len(no_indices), size=n_remove, replace=False).tolist())
    drop = {no_indices[i] for i in removed}
    return [p for i, p in enumerate(paragraphs) if i not in drop]
