"""Robust-finetuning input assembly for the stay predictor.

Three balancing mechanisms:
  * non-neutral stays get their gold evidence paragraphs plus irrelevant
    paragraphs from the same stay, each sampled independently with a small
    probability;
  * neutral stays get X unique irrelevant paragraphs with X drawn from the
    empirical distribution of evidence-paragraph counts over non-neutral
    stays, so input sizes leak no label information;
  * corpora skewed toward non-neutral stays can be topped up with generated
    neutral stays until the neutral fraction matches the reference corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from evistay.corpus.records import HospitalStay, Paragraph

# Balancing constants at reference-corpus scale: 102 of 697 stays were
# neutral and 1,800 generated neutral stays brought the neutral fraction to
# (102 + 1800) / (697 + 1800).
REFERENCE_NEUTRAL_STAYS = 102
REFERENCE_TOTAL_STAYS = 697
REFERENCE_ADDED_NEUTRALS = 1800
_TARGET_NUM = REFERENCE_NEUTRAL_STAYS + REFERENCE_ADDED_NEUTRALS
_TARGET_DEN = REFERENCE_TOTAL_STAYS + REFERENCE_ADDED_NEUTRALS


@dataclass
class NoiseConfig:
    irrelevant_prob: float = 0.05
    neutral_count_distribution: dict[int, float] = field(default_factory=dict)
    # None means: scale the reference count to keep the reference neutral
    # fraction; 0 disables injection.
    extra_neutral_stays: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.irrelevant_prob <= 1.0:
            raise ValueError(f"irrelevant_prob must be in [0, 1], got {self.irrelevant_prob}")
        if self.neutral_count_distribution:
            total = sum(self.neutral_count_distribution.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"neutral_count_distribution must sum to 1, got {total}")


def neutral_stays_needed(n_neutral: int, n_total: int) -> int:
    """Neutral stays to add so (n_neutral + x) / (n_total + x) hits the
    reference neutral fraction; 0 when the corpus is already at or above it."""
    if n_total <= 0:
        raise ValueError("n_total must be positive")
    x = (_TARGET_NUM * n_total - _TARGET_DEN * n_neutral) / (_TARGET_DEN - _TARGET_NUM)
    return max(0, round(x))


def build_neutral_count_distribution(evidence_counts: Sequence[int]) -> dict[int, float]:
    """Normalized histogram of evidence-paragraph counts per non-neutral stay.

    Zero counts are excluded (the support is positive integers); an empty or
    all-zero input is an error.
    """
    positive = [int(c) for c in evidence_counts if c > 0]
    if not positive:
        raise ValueError("no non-neutral stays with evidence paragraphs")
    total = len(positive)
    dist: dict[int, float] = {}
    for c in positive:
        dist[c] = dist.get(c, 0.0) + 1.0 / total
    return dict(sorted(dist.items()))


def sample_neutral_count(distribution: dict[int, float], rng: np.random.Generator) -> int:
    support = list(distribution)
    probs = np.array([distribution[k] for k in support])
    return int(support[int(rng.choice(len(support), p=probs / probs.sum()))])


def _stay_order_key(stay: HospitalStay, paragraph: Paragraph) -> tuple[int, int, int]:
    note_order = stay.note_ids.index(paragraph.note_id)
    _, seg, win = paragraph.paragraph_id.rsplit("/", 2)
    return note_order, int(seg), int(win)


def assemble_training_input(
    stay: HospitalStay,
    gold_evidence: list[Paragraph],
    irrelevant_pool: list[Paragraph],
    config: NoiseConfig,
    rng: np.random.Generator,
) -> list[Paragraph]:
    """Build the predictor's input paragraph list for one training stay.

    Output follows note order then window order. Neutral stays draw X unique
    pool paragraphs (clamped to the pool size); non-neutral stays keep their
    gold evidence and add each pool paragraph with ``irrelevant_prob``.
    """
    if stay.is_neutral:
        if not irrelevant_pool:
            raise ValueError(f"neutral stay {stay.stay_id!r} has no irrelevant paragraphs")
        if not config.neutral_count_distribution:
            raise ValueError("neutral_count_distribution is required for neutral stays")
        x = min(sample_neutral_count(config.neutral_count_distribution, rng), len(irrelevant_pool))
        picked_idx = rng.choice(len(irrelevant_pool), size=x, replace=False)
        chosen = [irrelevant_pool[i] for i in sorted(picked_idx.tolist())]
    else:
        if not gold_evidence:
            raise ValueError(f"non-neutral stay {stay.stay_id!r} has no gold evidence paragraphs")
        include = rng.random(len(irrelevant_pool)) < config.irrelevant_prob
        chosen = list(gold_evidence) + [
            p for i, p in enumerate(irrelevant_pool) if include[i]
        ]
    return sorted(chosen, key=lambda p: _stay_order_key(stay, p))
