"""Overlapping sentence windows.

Windows start at sentence 0 and advance with stride ``window - overlap``;
the final window may be shorter than ``window`` and generation stops as soon
as a window's end reaches the last sentence. Consecutive full windows
therefore share exactly ``overlap`` sentences and every sentence is covered.
"""

from __future__ import annotations


def window_paragraphs(n_sentences: int, window: int = 20, overlap: int = 5) -> list[tuple[int, int]]:
    """Return half-open [start, end) sentence-index windows for a note segment.

    Raises ValueError unless window > overlap >= 0. An empty sentence list
    yields no windows.
    """
    if overlap < 0 or window <= overlap:
        raise ValueError(f"require window > overlap >= 0, got window={window} overlap={overlap}")
    if n_sentences <= 0:
        return []
    stride = window - overlap
    windows: list[tuple[int, int]] = []
    start = 0
    while True:
        end = min(start + window, n_sentences)
        windows.append((start, end))
        if end >= n_sentences:
            return windows
        start += stride
