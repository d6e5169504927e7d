"""End-to-end stay inference: retrieve evidence, fall back when nothing is
retrieved, aggregate and predict."""

from __future__ import annotations

from typing import Any

import numpy as np

from evistay.corpus.records import HospitalStay, Paragraph
from evistay.predictor.model import StayPredictor
from evistay.predictor.noise import sample_neutral_count
from evistay.predictor.train import stay_rng
from evistay.retriever.model import RetrieverModel
from evistay.retriever.retrieve import classify_paragraphs


def infer_stay_pipeline(
    retriever: RetrieverModel,
    predictor: StayPredictor,
    stay: HospitalStay,
    stay_paragraphs: list[Paragraph],
    neutral_count_distribution: dict[int, float],
    seed: int = 0,
    rng: np.random.Generator | None = None,
    batch_size: int = 64,
) -> dict[str, Any]:
    """Predict SA and SI for one stay from its preprocessed paragraphs.

    When the retriever finds no evidence, X paragraphs are sampled from the
    stay's notes with X from the neutral-count distribution, mirroring how
    neutral stays are presented during training; the predictor, not a
    heuristic, produces the label. The record lists the paragraph ids that
    were actually consumed.
    """
    if not stay_paragraphs:
        raise ValueError(f"stay {stay.stay_id!r} has no paragraphs after preprocessing")
    predictions = classify_paragraphs(retriever, stay_paragraphs, batch_size)
    retrieved = [p for p in predictions if p.evidence_label == "yes"]
    fallback = not retrieved
    if fallback:
        rng = rng or stay_rng(seed, stay.stay_id)
        x = min(sample_neutral_count(neutral_count_distribution, rng), len(stay_paragraphs))
        picked = rng.choice(len(stay_paragraphs), size=x, replace=False)
        chosen = [stay_paragraphs[i] for i in sorted(picked.tolist())]
    else:
        chosen = [p.paragraph for p in retrieved]

    vectors = retriever.encode_texts([p.text for p in chosen], batch_size)
    record = predictor.predict_stay(vectors)
    record.update(
        {
            "stay_id": stay.stay_id,
            "evidence_paragraph_ids": [p.paragraph_id for p in chosen],
            "fallback_used": fallback,
        }
    )
    return record


def infer_stays(
    retriever: RetrieverModel,
    predictor: StayPredictor,
    stays: list[HospitalStay],
    paragraphs_by_stay: dict[str, list[Paragraph]],
    neutral_count_distribution: dict[int, float],
    seed: int = 0,
    batch_size: int = 64,
) -> list[dict[str, Any]]:
    return [
        infer_stay_pipeline(
            retriever,
            predictor,
            stay,
            paragraphs_by_stay.get(stay.stay_id, []),
            neutral_count_distribution,
            seed=seed,
            batch_size=batch_size,
        )
        for stay in stays
    ]
