"""Seeded synthetic clinical corpora with planted evidence and a ground-truth ledger.

Notes are generated line-oriented: a section header line followed by one
sentence per line, so the corpus module's sentence segmentation recovers the
generator's sentence list exactly. The ledger predicts, per paragraph id,
the labels the corpus module must derive; any mismatch is a bug in one of
the two modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from evistay.corpus.records import (
    ClinicalNote,
    Corpus,
    EvidenceAnnotation,
    HospitalStay,
    write_jsonl,
)
from evistay.corpus.windows import window_paragraphs
from evistay.labels import SA_FINE_PRECEDENCE, SA_LABELS, SI_LABELS, SI_PRECEDENCE, merge_sa_label
from evistay.synth.templates import TemplatePools, load_default_pools

# Stay-level label counts of the reference training corpus; the default
# label mix is the product of the row-normalized marginals.
SA_STAY_REFERENCE = {"positive": 377, "neg_unsure": 54, "neutral": 1381}
SI_STAY_REFERENCE = {"positive": 377, "negative": 214, "neutral": 1521}

SECTION_HEADERS = (
    "Nursing",
    "Present Illness",
    "Past Medical History",
    "Physician",
    "Social Work",
    "Consult",
    "Observation and Plan",
    "Discharge Summary",
)
NOTE_CATEGORIES = ("nursing", "physician", "discharge summary", "consult")


def default_label_mix() -> dict[tuple[str, str], float]:
    sa_total = sum(SA_STAY_REFERENCE.values())
    si_total = sum(SI_STAY_REFERENCE.values())
    mix = {}
    for sa in SA_LABELS:
        for si in SI_LABELS:
            mix[(sa, si)] = (SA_STAY_REFERENCE[sa] / sa_total) * (SI_STAY_REFERENCE[si] / si_total)
    return mix


@dataclass
class SynthSpec:
    n_stays: int = 500
    label_mix: dict[tuple[str, str], float] = field(default_factory=default_label_mix)
    notes_per_stay: tuple[int, int] = (2, 4)
    sentences_per_note: tuple[int, int] = (12, 30)
    evidence_sentences_per_positive_stay: tuple[int, int] = (1, 4)
    window: int = 20
    overlap: int = 5
    multi_stay_patient_prob: float = 0.04
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_stays <= 0:
            raise ValueError("n_stays must be positive")
        total = sum(self.label_mix.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"label_mix must sum to 1, got {total}")
        for (sa, si), prob in self.label_mix.items():
            if sa not in SA_LABELS or si not in SI_LABELS:
                raise ValueError(f"invalid label combination ({sa}, {si})")
            if prob < 0:
                raise ValueError("label_mix probabilities must be non-negative")
        for name in ("notes_per_stay", "sentences_per_note", "evidence_sentences_per_positive_stay"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise ValueError(f"{name} range must satisfy 1 <= lo <= hi, got ({lo}, {hi})")


@dataclass
class SynthCorpus:
    corpus: Corpus
    ledger: list[dict[str, Any]]


def _sample_range(rng: np.random.Generator, bounds: tuple[int, int]) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def _pick(rng: np.random.Generator, pool: tuple) -> Any:
    return pool[int(rng.integers(len(pool)))]


def generate_stay(
    spec: SynthSpec,
    stay_template: tuple[str, str],
    rng: np.random.Generator,
    pools: TemplatePools | None = None,
    stay_id: str = "stay00000",
    patient_id: str = "pat00000",
    note_id_start: int = 0,
) -> tuple[list[ClinicalNote], list[EvidenceAnnotation], HospitalStay, list[dict[str, Any]]]:
    """Generate one stay's notes, annotations, stay record and ledger rows.

    Non-neutral stays plant at least one evidence sentence per non-neutral
    axis, drawn from the matching template pool; neutral stays plant none.
    """
    pools = pools or load_default_pools()
    sa_label, si_label = stay_template
    if sa_label not in SA_LABELS or si_label not in SI_LABELS:
        raise ValueError(f"invalid stay template ({sa_label}, {si_label})")

    n_notes = _sample_range(rng, spec.notes_per_stay)

    # (event, fine_label, text, method) for every sentence to plant
    planted: list[tuple[str, str, str, str | None]] = []
    if sa_label != "neutral":
        for _ in range(_sample_range(rng, spec.evidence_sentences_per_positive_stay)):
            fine = "positive" if sa_label == "positive" else _pick(rng, ("negative", "unsure"))
            tpl = _pick(rng, pools.sa_pool(fine))
            planted.append(("SA", fine, tpl.text, tpl.method))
    if si_label != "neutral":
        for _ in range(_sample_range(rng, spec.evidence_sentences_per_positive_stay)):
            sent = _pick(rng, pools.si_pool(si_label))
            planted.append(("SI", si_label, sent, None))
    target_notes = [int(rng.integers(n_notes)) for _ in planted]

    notes: list[ClinicalNote] = []
    annotations: list[EvidenceAnnotation] = []
    ledger: list[dict[str, Any]] = []

    for note_index in range(n_notes):
        note_id = f"note{note_id_start + note_index:06d}"
        header = _pick(rng, SECTION_HEADERS)
        category = _pick(rng, NOTE_CATEGORIES)
        lines: list[tuple[str, tuple[str, str, str | None] | None]] = [
            (_pick(rng, pools.filler), None)
            for _ in range(_sample_range(rng, spec.sentences_per_note))
        ]
        for plant_index, (event, fine, text, method) in enumerate(planted):
            if target_notes[plant_index] != note_index:
                continue
            pos = int(rng.integers(len(lines) + 1))
            lines.insert(pos, (text, (event, fine, method)))

        all_lines = [f"{header}:"] + [text for text, _ in lines]
        note_text = "\n".join(all_lines)
        notes.append(
            ClinicalNote(
                note_id=note_id,
                patient_id=patient_id,
                stay_id=stay_id,
                category=category,
                text=note_text,
            )
        )

        # char offsets per line: header occupies line 0
        offsets = []
        pos = 0
        for line in all_lines:
            offsets.append(pos)
            pos += len(line) + 1

        # sentence index -> planted (event, fine) pairs; header is sentence 0
        planted_by_sentence: dict[int, list[tuple[str, str]]] = {}
        for line_index, (text, info) in enumerate(lines):
            if info is None:
                continue
            event, fine, method = info
            sentence_index = 1 + line_index
            start = offsets[sentence_index]
            annotations.append(
                EvidenceAnnotation(
                    note_id=note_id,
                    start=start,
                    end=start + len(text),
                    event=event,
                    label=fine,
                    method=method,
                )
            )
            planted_by_sentence.setdefault(sentence_index, []).append((event, fine))

        n_sentences = len(all_lines)
        for win_index, (w_start, w_end) in enumerate(
            window_paragraphs(n_sentences, spec.window, spec.overlap)
        ):
            sa_seen = set()
            si_seen = set()
            for s in range(w_start, w_end):
                for event, fine in planted_by_sentence.get(s, []):
                    (sa_seen if event == "SA" else si_seen).add(fine)
            sa_fine = next((lbl for lbl in SA_FINE_PRECEDENCE if lbl in sa_seen), "neutral")
            si = next((lbl for lbl in SI_PRECEDENCE if lbl in si_seen), "neutral")
            ledger.append(
                {
                    "paragraph_id": f"{note_id}/0/{win_index}",
                    "evidence": "yes" if (sa_seen or si_seen) else "no",
                    "sa_label": merge_sa_label(sa_fine),
                    "sa_label_fine": sa_fine,
                    "si_label": si,
                }
            )

    stay = HospitalStay(
        stay_id=stay_id,
        patient_id=patient_id,
        sa_label=sa_label,
        si_label=si_label,
        note_ids=tuple(n.note_id for n in notes),
    )
    return notes, annotations, stay, ledger


def generate_corpus(spec: SynthSpec, pools: TemplatePools | None = None) -> SynthCorpus:
    """Generate a full corpus of ``spec.n_stays`` stays with its ledger."""
    pools = pools or load_default_pools()
    seed_seq = np.random.SeedSequence(spec.seed)
    children = seed_seq.spawn(spec.n_stays + 1)
    master = np.random.default_rng(children[0])

    combos = [(sa, si) for sa in SA_LABELS for si in SI_LABELS]
    probs = np.array([spec.label_mix.get(c, 0.0) for c in combos])
    probs = probs / probs.sum()

    notes: list[ClinicalNote] = []
    annotations: list[EvidenceAnnotation] = []
    stays: list[HospitalStay] = []
    ledger: list[dict[str, Any]] = []

    patient_ids: list[str] = []
    next_patient = 0
    note_counter = 0
    for stay_index in range(spec.n_stays):
        combo = combos[int(master.choice(len(combos), p=probs))]
        if patient_ids and master.random() < spec.multi_stay_patient_prob:
            patient_id = patient_ids[int(master.integers(len(patient_ids)))]
        else:
            patient_id = f"pat{next_patient:05d}"
            patient_ids.append(patient_id)
            next_patient += 1

        stay_rng = np.random.default_rng(children[stay_index + 1])
        s_notes, s_anns, stay, s_ledger = generate_stay(
            spec,
            combo,
            stay_rng,
            pools,
            stay_id=f"stay{stay_index:05d}",
            patient_id=patient_id,
            note_id_start=note_counter,
        )
        note_counter += len(s_notes)
        notes.extend(s_notes)
        annotations.extend(s_anns)
        stays.append(stay)
        ledger.extend(s_ledger)

    corpus = Corpus(notes=notes, annotations=annotations, stays=stays)
    return SynthCorpus(corpus=corpus, ledger=ledger)


def generate_neutral_stays(
    count: int, seed: int, like: SynthSpec | None = None, pools: TemplatePools | None = None
) -> SynthCorpus:
    """Generate ``count`` fully neutral stays (predictor-balancing injection)."""
    base = like or SynthSpec()
    spec = SynthSpec(
        n_stays=count,
        label_mix={("neutral", "neutral"): 1.0},
        notes_per_stay=base.notes_per_stay,
        sentences_per_note=base.sentences_per_note,
        evidence_sentences_per_positive_stay=base.evidence_sentences_per_positive_stay,
        window=base.window,
        overlap=base.overlap,
        multi_stay_patient_prob=0.0,
        seed=seed,
    )
    return generate_corpus(spec, pools)


def write_synth_corpus(synth: SynthCorpus, out_dir: str | Path) -> dict[str, str]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = synth.corpus
    paths = {
        "notes": out / "notes.jsonl",
        "annotations": out / "annotations.jsonl",
        "stays": out / "stays.jsonl",
        "ledger": out / "ledger.jsonl",
    }
    write_jsonl(
        paths["notes"],
        (
            {
                "note_id": n.note_id,
                "patient_id": n.patient_id,
                "stay_id": n.stay_id,
                "category": n.category,
                "text": n.text,
            }
            for n in corpus.notes
        ),
    )
    write_jsonl(
        paths["annotations"],
        (
            {
                "note_id": a.note_id,
                "start": a.start,
                "end": a.end,
                "event": a.event,
                "label": a.label,
                **({"method": a.method} if a.method else {}),
            }
            for a in corpus.annotations
        ),
    )
    write_jsonl(
        paths["stays"],
        (
            {
                "stay_id": s.stay_id,
                "patient_id": s.patient_id,
                "sa_label": s.sa_label,
                "si_label": s.si_label,
            }
            for s in corpus.stays
        ),
    )
    write_jsonl(paths["ledger"], synth.ledger)
    return {k: str(v) for k, v in paths.items()}
