"""Rule-based sentence segmentation for clinical note text.

Clinical notes are line-oriented and telegraphic, so the splitter treats
newlines as hard boundaries and terminal punctuation (. ! ?) followed by
whitespace as soft boundaries, with guards for decimals, initials and common
clinical abbreviations. Semicolons and colons never end a sentence. The
segmentation is deterministic and dependency-free.
"""

from __future__ import annotations

import re

# Abbreviations that end with a period but do not end a sentence. Compared
# case-insensitively against the token preceding the period.
_ABBREVIATIONS = frozenset(
    {
        "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr",
        "vs", "etc", "approx", "dept", "fig", "no",
        "e.g", "i.e", "a.m", "p.m", "b.i.d", "t.i.d", "q.i.d", "p.o", "p.r.n",
    }
)

_WORD_BEFORE = re.compile(r"[A-Za-z][A-Za-z.]*$")


def _is_boundary(text: str, i: int) -> bool:
    """True if the terminal-punctuation run ending at index i closes a sentence."""
    ch = text[i]
    if ch in "!?":
        return True
    # ch == "."
    prev = text[i - 1] if i > 0 else ""
    nxt = text[i + 1] if i + 1 < len(text) else ""
    if prev.isdigit() and nxt.isdigit():
        return False  # decimal like 1.5
    match = _WORD_BEFORE.search(text, 0, i)
    if match:
        token = match.group(0).rstrip(".")
        if token.lower() in _ABBREVIATIONS:
            return False
        if len(token) == 1 and token.isupper():
            return False  # initial like "J."
    return True


def _split_line(text: str, offset: int) -> list[tuple[int, int]]:
    spans: list[tuple[int, int]] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in ".!?":
            # consume the full punctuation run
            j = i
            while j + 1 < n and text[j + 1] in ".!?":
                j += 1
            after = text[j + 1] if j + 1 < n else ""
            if (after == "" or after.isspace()) and _is_boundary(text, j):
                spans.append((start, j + 1))
                start = j + 1
            i = j + 1
        else:
            i += 1
    if start < n:
        spans.append((start, n))
    trimmed = []
    for s, e in spans:
        while s < e and text[s].isspace():
            s += 1
        while e > s and text[e - 1].isspace():
            e -= 1
        if s < e:
            trimmed.append((offset + s, offset + e))
    return trimmed


def segment_sentences(text: str) -> list[tuple[int, int]]:
    """Segment text into ordered, non-overlapping sentence spans.

    Returns half-open [start, end) code-point spans covering every
    non-whitespace character. Empty input yields an empty list.
    """
    spans: list[tuple[int, int]] = []
    pos = 0
    for line in text.split("\n"):
        spans.extend(_split_line(line, pos))
        pos += len(line) + 1
    return spans
