"""Clinical-note section filtering.

A fixed list of 24 section names is considered relevant. Header lines are
detected with a generic line-start pattern (a short run of words followed by
a colon) and mapped onto sections through case-insensitive header strings;
segments under unrecognized headers are dropped. A note with no recognizable
headers at all is retained whole so its annotations stay reachable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from evistay.corpus.records import ClinicalNote

ALLOWED_SECTIONS = (
    "Allergy",
    "Case Management",
    "Consult",
    "Discharge Summary",
    "Family history",
    "General",
    "HIV Screening",
    "Labs and Studies",
    "Medication",
    "Nursing",
    "Nursing/other",
    "Nutrition",
    "Observation and Plan",
    "Past Medical History",
    "Patient Instructions",
    "Physical Exam",
    "Physician",
    "Present Illness",
    "Problem List",
    "Radiology",
    "Rehab Services",
    "Respiratory",
    "Sexual and Social History",
    "Social Work",
)

# Extra header spellings beyond the section name itself.
_DEFAULT_ALIASES: dict[str, tuple[str, ...]] = {
    "Allergy": ("allergies",),
    "Medication": ("medications", "discharge medications"),
    "Past Medical History": ("pmh", "past medical hx"),
    "Physical Exam": ("physical examination", "pe"),
    "Present Illness": ("history of present illness", "hpi"),
    "Family history": ("family hx",),
    "Sexual and Social History": ("social history", "sexual history"),
    "Labs and Studies": ("labs", "laboratory studies"),
    "Observation and Plan": ("assessment and plan",),
    "Nursing": ("nursing note", "nursing progress note"),
    "Discharge Summary": ("discharge note",),
}

# A header is a short run of words at line start, ending with a colon.
_HEADER_RE = re.compile(r"(?m)^[ \t]*([A-Za-z][A-Za-z'./-]*(?:[ \t]+[A-Za-z'./-]+){0,5})[ \t]*:")

# Section name assigned to the whole-note fallback segment.
UNSECTIONED = "unsectioned"


def _normalize(header: str) -> str:
    return re.sub(r"\s+", " ", header.strip().lower())


@dataclass(frozen=True)
class SectionSegment:
    """A contiguous note slice starting at a matched header."""

    section: str
    start: int
    end: int


@dataclass
class SectionFilter:
    allowed_sections: tuple[str, ...] = ALLOWED_SECTIONS
    header_patterns: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.header_patterns:
            patterns: dict[str, tuple[str, ...]] = {}
            for section in self.allowed_sections:
                aliases = (_normalize(section),) + tuple(
                    _normalize(a) for a in _DEFAULT_ALIASES.get(section, ())
                )
                patterns[section] = aliases
            self.header_patterns = patterns
        self._lookup = {
            pattern: section
            for section, aliases in self.header_patterns.items()
            for pattern in aliases
        }

    def section_for_header(self, header: str) -> str | None:
        return self._lookup.get(_normalize(header))


def filter_sections(note: ClinicalNote, section_filter: SectionFilter | None = None) -> list[SectionSegment]:
    """Slice a note into retained section segments.

    Each segment begins at a matched header and ends before the next header.
    Segments whose header maps to no allowed section are dropped. Notes
    without any header-like line are retained whole as one segment.
    """
    section_filter = section_filter or SectionFilter()
    text = note.text
    matches = list(_HEADER_RE.finditer(text))
    if not matches:
        return [SectionSegment(UNSECTIONED, 0, len(text))]

    segments: list[SectionSegment] = []
    for i, match in enumerate(matches):
        section = section_filter.section_for_header(match.group(1))
        if section is None:
            continue
        start = match.start()
        end = matches[i + 1].start() if i + 1 < len(matches) else len(text)
        segments.append(SectionSegment(section, start, end))
    return segments
