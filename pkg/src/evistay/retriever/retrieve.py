"""Evidence retrieval: keep every paragraph the classifier marks as evidence."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from evistay.corpus.labeling import build_note_paragraphs
from evistay.corpus.records import ClinicalNote, HospitalStay, Paragraph
from evistay.corpus.sections import SectionFilter
from evistay.labels import EVIDENCE_LABELS, SA_LABELS, SI_LABELS
from evistay.retriever.model import RetrieverModel


@dataclass(frozen=True)
class ParagraphPrediction:
    paragraph: Paragraph
    evidence_probs: np.ndarray
    sa_probs: np.ndarray
    si_probs: np.ndarray

    @property
    def evidence_label(self) -> str:
        return EVIDENCE_LABELS[int(self.evidence_probs.argmax())]

    @property
    def sa_label(self) -> str:
        return SA_LABELS[int(self.sa_probs.argmax())]

    @property
    def si_label(self) -> str:
        return SI_LABELS[int(self.si_probs.argmax())]

    def to_record(self) -> dict:
        return {
            "paragraph_id": self.paragraph.paragraph_id,
            "evidence_prob": float(self.evidence_probs[EVIDENCE_LABELS.index("yes")]),
            "sa_probs": [float(x) for x in self.sa_probs],
            "si_probs": [float(x) for x in self.si_probs],
            "evidence_label": self.evidence_label,
            "sa_label": self.sa_label,
            "si_label": self.si_label,
        }


def classify_paragraphs(
    model: RetrieverModel, paragraphs: list[Paragraph], batch_size: int = 64
) -> list[ParagraphPrediction]:
    if not paragraphs:
        return []
    evi, sa, si = model.classify_batch([p.text for p in paragraphs], batch_size)
    return [
        ParagraphPrediction(p, evi[i], sa[i], si[i]) for i, p in enumerate(paragraphs)
    ]


def retrieve_evidence_from_paragraphs(
    model: RetrieverModel, paragraphs: list[Paragraph], batch_size: int = 64
) -> list[ParagraphPrediction]:
    """Predictions for paragraphs classified evidence=yes, input order kept."""
    return [
        pred
        for pred in classify_paragraphs(model, paragraphs, batch_size)
        if pred.evidence_label == "yes"
    ]


def retrieve_evidence(
    model: RetrieverModel,
    stay: HospitalStay,
    notes: list[ClinicalNote],
    section_filter: SectionFilter | None = None,
    window: int = 20,
    overlap: int = 5,
    batch_size: int = 64,
) -> list[ParagraphPrediction]:
    """Build the stay's paragraphs from its notes, then retrieve evidence."""
    if not notes:
        raise ValueError(f"stay {stay.stay_id!r} has no notes")
    paragraphs: list[Paragraph] = []
    for note in notes:
        if note.stay_id != stay.stay_id:
            raise ValueError(f"note {note.note_id!r} does not belong to stay {stay.stay_id!r}")
        paragraphs.extend(build_note_paragraphs(note, [], section_filter, window, overlap))
    return retrieve_evidence_from_paragraphs(model, paragraphs, batch_size)
