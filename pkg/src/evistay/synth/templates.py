"""Template pools for the synthetic corpus generator.

Pools live as editable plain-text resources next to this module. SA pools
carry a method category per sentence (METHOD|sentence); SI and filler pools
are one sentence per line. The default pools keep evidence vocabulary
disjoint from filler vocabulary so generated corpora are separable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources


@dataclass(frozen=True)
class SaTemplate:
    text: str
    method: str


@dataclass(frozen=True)
class TemplatePools:
    sa_positive: tuple[SaTemplate, ...]
    sa_negative: tuple[SaTemplate, ...]
    sa_unsure: tuple[SaTemplate, ...]
    si_positive: tuple[str, ...]
    si_negative: tuple[str, ...]
    filler: tuple[str, ...]

    def sa_pool(self, fine_label: str) -> tuple[SaTemplate, ...]:
        return {
            "positive": self.sa_positive,
            "negative": self.sa_negative,
            "unsure": self.sa_unsure,
        }[fine_label]

    def si_pool(self, label: str) -> tuple[str, ...]:
        return {"positive": self.si_positive, "negative": self.si_negative}[label]


def _read_lines(name: str) -> list[str]:
    text = resources.files("evistay.synth").joinpath(f"resources/{name}").read_text("utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def _read_sa(name: str) -> tuple[SaTemplate, ...]:
    out = []
    for line in _read_lines(name):
        method, text = line.split("|", 1)
        out.append(SaTemplate(text=text.strip(), method=method.strip()))
    return tuple(out)


def load_default_pools() -> TemplatePools:
    return TemplatePools(
        sa_positive=_read_sa("sa_positive.txt"),
        sa_negative=_read_sa("sa_negative.txt"),
        sa_unsure=_read_sa("sa_unsure.txt"),
        si_positive=tuple(_read_lines("si_positive.txt")),
        si_negative=tuple(_read_lines("si_negative.txt")),
        filler=tuple(_read_lines("neutral_filler.txt")),
    )


def tokenize(text: str) -> set[str]:
    return {t for t in re.split(r"[^0-9a-z]+", text.lower()) if t}


def evidence_vocabulary(pools: TemplatePools) -> set[str]:
    vocab: set[str] = set()
    for tpl in pools.sa_positive + pools.sa_negative + pools.sa_unsure:
        vocab |= tokenize(tpl.text)
    for sent in pools.si_positive + pools.si_negative:
        vocab |= tokenize(sent)
    return vocab


def filler_vocabulary(pools: TemplatePools) -> set[str]:
    vocab: set[str] = set()
    for sent in pools.filler:
        vocab |= tokenize(sent)
    return vocab
