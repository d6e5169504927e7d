"""Corpus record types and the JSONL interchange formats.

File formats (all UTF-8, one JSON object per line):

  notes.jsonl        {note_id, patient_id, stay_id, category, text}
  annotations.jsonl  {note_id, start, end, event, label, method?}
  stays.jsonl        {stay_id, patient_id, sa_label, si_label}

Character offsets are 0-based code-point offsets into the note text,
half-open [start, end).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

from evistay.labels import SA_LABELS, SA_METHODS, SI_LABELS


class CorpusError(ValueError):
    """Malformed or inconsistent corpus input."""


@dataclass(frozen=True)
class ClinicalNote:
    note_id: str
    patient_id: str
    stay_id: str
    category: str
    text: str


@dataclass(frozen=True)
class HospitalStay:
    stay_id: str
    patient_id: str
    sa_label: str
    si_label: str
    note_ids: tuple[str, ...] = ()

    @property
    def is_neutral(self) -> bool:
        return self.sa_label == "neutral" and self.si_label == "neutral"


@dataclass(frozen=True)
class EvidenceAnnotation:
    note_id: str
    start: int
    end: int
    event: str  # "SA" | "SI"
    label: str  # SA: positive/negative/unsure; SI: positive/negative
    method: str | None = None  # SA only

    def __post_init__(self) -> None:
        if self.event not in ("SA", "SI"):
            raise CorpusError(f"unknown annotation event {self.event!r}")
        if not 0 <= self.start < self.end:
            raise CorpusError(f"invalid span [{self.start}, {self.end})")
        valid = ("positive", "negative", "unsure") if self.event == "SA" else ("positive", "negative")
        if self.label not in valid:
            raise CorpusError(f"invalid {self.event} label {self.label!r}")
        if self.method is not None:
            if self.event != "SA":
                raise CorpusError("method category is only valid for SA annotations")
            if self.method not in SA_METHODS:
                raise CorpusError(f"unknown method category {self.method!r}")

    def overlaps(self, start: int, end: int) -> bool:
        return self.start < end and self.end > start


@dataclass(frozen=True)
class Paragraph:
    """A window of consecutive sentences with derived labels.

    ``sentence_range`` is inclusive [first, last] over the note's sentence
    list; ``sa_label`` is the merged 3-way label and ``sa_label_fine`` keeps
    the 4-way label the merge was derived from.
    """

    paragraph_id: str
    note_id: str
    stay_id: str
    patient_id: str
    section: str
    sentence_range: tuple[int, int]
    char_range: tuple[int, int]
    text: str
    evidence: str
    sa_label: str
    sa_label_fine: str
    si_label: str

    def to_record(self) -> dict[str, Any]:
        return {
            "paragraph_id": self.paragraph_id,
            "note_id": self.note_id,
            "stay_id": self.stay_id,
            "patient_id": self.patient_id,
            "section": self.section,
            "sentence_range": list(self.sentence_range),
            "char_range": list(self.char_range),
            "text": self.text,
            "evidence": self.evidence,
            "sa_label": self.sa_label,
            "sa_label_fine": self.sa_label_fine,
            "si_label": self.si_label,
        }

    @classmethod
    def from_record(cls, rec: dict[str, Any]) -> "Paragraph":
        return cls(
            paragraph_id=rec["paragraph_id"],
            note_id=rec["note_id"],
            stay_id=rec["stay_id"],
            patient_id=rec["patient_id"],
            section=rec["section"],
            sentence_range=tuple(rec["sentence_range"]),
            char_range=tuple(rec["char_range"]),
            text=rec["text"],
            evidence=rec["evidence"],
            sa_label=rec["sa_label"],
            sa_label_fine=rec["sa_label_fine"],
            si_label=rec["si_label"],
        )


@dataclass
class Corpus:
    """An in-memory corpus with id indexes and validated cross references."""

    notes: list[ClinicalNote]
    annotations: list[EvidenceAnnotation]
    stays: list[HospitalStay]
    notes_by_id: dict[str, ClinicalNote] = field(default_factory=dict)
    stays_by_id: dict[str, HospitalStay] = field(default_factory=dict)
    annotations_by_note: dict[str, list[EvidenceAnnotation]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.notes_by_id = {}
        for note in self.notes:
            if note.note_id in self.notes_by_id:
                raise CorpusError(f"duplicate note_id {note.note_id!r}")
            if not note.text:
                raise CorpusError(f"note {note.note_id!r} has empty text")
            self.notes_by_id[note.note_id] = note

        self.stays_by_id = {}
        note_ids_by_stay: dict[str, list[str]] = {}
        for note in self.notes:
            note_ids_by_stay.setdefault(note.stay_id, []).append(note.note_id)
        for stay in self.stays:
            if stay.stay_id in self.stays_by_id:
                raise CorpusError(f"duplicate stay_id {stay.stay_id!r}")
            if stay.sa_label not in SA_LABELS:
                raise CorpusError(f"stay {stay.stay_id!r}: bad sa_label {stay.sa_label!r}")
            if stay.si_label not in SI_LABELS:
                raise CorpusError(f"stay {stay.stay_id!r}: bad si_label {stay.si_label!r}")
            if not stay.note_ids:
                stay = HospitalStay(
                    stay_id=stay.stay_id,
                    patient_id=stay.patient_id,
                    sa_label=stay.sa_label,
                    si_label=stay.si_label,
                    note_ids=tuple(note_ids_by_stay.get(stay.stay_id, ())),
                )
            self.stays_by_id[stay.stay_id] = stay
        self.stays = list(self.stays_by_id.values())

        for note in self.notes:
            stay = self.stays_by_id.get(note.stay_id)
            if stay is None:
                raise CorpusError(f"note {note.note_id!r} references unknown stay {note.stay_id!r}")
            if stay.patient_id != note.patient_id:
                raise CorpusError(
                    f"note {note.note_id!r} patient {note.patient_id!r} does not match "
                    f"stay {stay.stay_id!r} patient {stay.patient_id!r}"
                )

        self.annotations_by_note = {}
        for ann in self.annotations:
            note = self.notes_by_id.get(ann.note_id)
            if note is None:
                raise CorpusError(f"annotation references unknown note_id {ann.note_id!r}")
            if ann.end > len(note.text):
                raise CorpusError(
                    f"annotation span [{ann.start}, {ann.end}) exceeds note {ann.note_id!r} "
                    f"length {len(note.text)}"
                )
            self.annotations_by_note.setdefault(ann.note_id, []).append(ann)

    def notes_for_stay(self, stay_id: str) -> list[ClinicalNote]:
        stay = self.stays_by_id[stay_id]
        return [self.notes_by_id[nid] for nid in stay.note_ids]


def read_jsonl(path: str | Path) -> Iterator[dict[str, Any]]:
    """Yield one object per line; raises CorpusError with the line number."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path.name}:{lineno}: malformed JSON line ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise CorpusError(f"{path.name}:{lineno}: expected a JSON object")
            yield obj


def write_jsonl(path: str | Path, records: Iterable[dict[str, Any]]) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True))
            fh.write("\n")


def _require(rec: dict[str, Any], keys: Iterable[str], where: str) -> None:
    missing = [k for k in keys if k not in rec]
    if missing:
        raise CorpusError(f"{where}: missing field(s) {missing}")


def load_corpus(notes_path: str | Path, annotations_path: str | Path, stays_path: str | Path) -> Corpus:
    notes = []
    for i, rec in enumerate(read_jsonl(notes_path), start=1):
        _require(rec, ("note_id", "patient_id", "stay_id", "category", "text"), f"notes.jsonl:{i}")
        notes.append(
            ClinicalNote(
                note_id=rec["note_id"],
                patient_id=rec["patient_id"],
                stay_id=rec["stay_id"],
                category=rec["category"],
                text=rec["text"],
            )
        )

    annotations = []
    for i, rec in enumerate(read_jsonl(annotations_path), start=1):
        _require(rec, ("note_id", "start", "end", "event", "label"), f"annotations.jsonl:{i}")
        annotations.append(
            EvidenceAnnotation(
                note_id=rec["note_id"],
                start=int(rec["start"]),
                end=int(rec["end"]),
                event=rec["event"],
                label=rec["label"],
                method=rec.get("method"),
            )
        )

    stays = []
    for i, rec in enumerate(read_jsonl(stays_path), start=1):
        _require(rec, ("stay_id", "patient_id", "sa_label", "si_label"), f"stays.jsonl:{i}")
        stays.append(
            HospitalStay(
                stay_id=rec["stay_id"],
                patient_id=rec["patient_id"],
                sa_label=rec["sa_label"],
                si_label=rec["si_label"],
            )
        )

    return Corpus(notes=notes, annotations=annotations, stays=stays)
