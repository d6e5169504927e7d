"""Corpus statistics: label distributions per split, in text and JSON form."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from evistay.corpus.records import Corpus, Paragraph
from evistay.corpus.splits import SPLIT_NAMES, DatasetSplit
from evistay.labels import EVIDENCE_LABELS, SA_FINE_LABELS, SA_LABELS, SI_LABELS


@dataclass
class StatsReport:
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return self.data

    def to_text(self) -> str:
        lines = []
        general = self.data["general"]
        lines.append("General")
        lines.append(
            f"  patients={general['patients']}  stays={general['stays']}  "
            f"notes={general['notes']}  annotations={general['annotations']}"
        )
        ann = self.data["annotations"]
        lines.append("Unique annotations")
        lines.append("  SA: " + "  ".join(f"{k}={v}" for k, v in ann["sa"].items()))
        lines.append("  SI: " + "  ".join(f"{k}={v}" for k, v in ann["si"].items()))
        for split, block in self.data["splits"].items():
            lines.append(f"[{split}]")
            lines.append(
                "  stays      SA: "
                + "  ".join(f"{k}={v}" for k, v in block["stays"]["sa"].items())
            )
            lines.append(
                "             SI: "
                + "  ".join(f"{k}={v}" for k, v in block["stays"]["si"].items())
            )
            para = block["paragraphs"]
            lines.append(
                "  paragraphs evidence: "
                + "  ".join(f"{k}={v}" for k, v in para["evidence"].items())
            )
            lines.append(
                "             SA(fine): "
                + "  ".join(f"{k}={v}" for k, v in para["sa_fine"].items())
            )
            lines.append(
                "             SA: " + "  ".join(f"{k}={v}" for k, v in para["sa"].items())
            )
            lines.append(
                "             SI: " + "  ".join(f"{k}={v}" for k, v in para["si"].items())
            )
        return "\n".join(lines) + "\n"


def _count(values: list[str], ordering: tuple[str, ...]) -> dict[str, int]:
    counter = Counter(values)
    return {label: counter.get(label, 0) for label in ordering}


def corpus_stats(
    corpus: Corpus,
    paragraphs: list[Paragraph] | None = None,
    split: DatasetSplit | None = None,
) -> StatsReport:
    """Summarize label distributions.

    Without a split, everything is reported under the single split "all".
    """
    paragraphs = paragraphs or []
    if split is None:
        split_of = {stay.stay_id: "all" for stay in corpus.stays}
        split_names: tuple[str, ...] = ("all",)
    else:
        split_of = {
            stay_id: name for name in SPLIT_NAMES for stay_id in split.stays(name)
        }
        split_names = SPLIT_NAMES

    ann_sa = _count(
        [a.label for a in corpus.annotations if a.event == "SA"],
        ("positive", "negative", "unsure"),
    )
    ann_si = _count(
        [a.label for a in corpus.annotations if a.event == "SI"],
        ("positive", "negative"),
    )

    splits_block: dict[str, Any] = {}
    for name in split_names:
        stay_ids = {sid for sid, s in split_of.items() if s == name}
        split_stays = [s for s in corpus.stays if s.stay_id in stay_ids]
        split_paras = [p for p in paragraphs if split_of.get(p.stay_id) == name]
        splits_block[name] = {
            "stays": {
                "total": len(split_stays),
                "sa": _count([s.sa_label for s in split_stays], SA_LABELS),
                "si": _count([s.si_label for s in split_stays], SI_LABELS),
            },
            "paragraphs": {
                "total": len(split_paras),
                "evidence": _count([p.evidence for p in split_paras], EVIDENCE_LABELS),
                "sa_fine": _count([p.sa_label_fine for p in split_paras], SA_FINE_LABELS),
                "sa": _count([p.sa_label for p in split_paras], SA_LABELS),
                "si": _count([p.si_label for p in split_paras], SI_LABELS),
            },
        }

    data = {
        "general": {
            "patients": len({s.patient_id for s in corpus.stays}),
            "stays": len(corpus.stays),
            "notes": len(corpus.notes),
            "annotations": len(corpus.annotations),
        },
        "annotations": {"sa": ann_sa, "si": ann_si},
        "splits": splits_block,
    }
    return StatsReport(data)
