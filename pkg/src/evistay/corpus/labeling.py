"""Paragraph construction: sections -> sentences -> windows -> derived labels.

A sentence is annotated iff it overlaps an annotation span, even partially.
Window labels follow a fixed precedence so that rarer affirmative evidence
dominates: SA positive > unsure > negative > neutral, SI positive > negative
> neutral. A window with no annotated sentence is a no-evidence paragraph.
"""

from __future__ import annotations

from evistay.corpus.records import ClinicalNote, Corpus, EvidenceAnnotation, Paragraph
from evistay.corpus.sections import SectionFilter, SectionSegment, filter_sections
from evistay.corpus.sentences import segment_sentences
from evistay.corpus.windows import window_paragraphs
from evistay.labels import SA_FINE_PRECEDENCE, SI_PRECEDENCE, merge_sa_label


def derive_paragraph_labels(
    sentence_indices: range,
    annotations_per_sentence: list[list[EvidenceAnnotation]],
) -> tuple[str, str, str]:
    """Derive (evidence, sa_label_4way, si_label) for one window.

    ``annotations_per_sentence`` is indexed by note-sentence index and holds
    the annotations overlapping each sentence.
    """
    sa_seen: set[str] = set()
    si_seen: set[str] = set()
    any_annotation = False
    for idx in sentence_indices:
        for ann in annotations_per_sentence[idx]:
            any_annotation = True
            if ann.event == "SA":
                sa_seen.add(ann.label)
            else:
                si_seen.add(ann.label)

    sa_label = next((lbl for lbl in SA_FINE_PRECEDENCE if lbl in sa_seen), "neutral")
    si_label = next((lbl for lbl in SI_PRECEDENCE if lbl in si_seen), "neutral")
    evidence = "yes" if any_annotation else "no"
    return evidence, sa_label, si_label


def _sentences_for_segments(
    note: ClinicalNote, segments: list[SectionSegment]
) -> list[tuple[SectionSegment, list[tuple[int, int]]]]:
    """Per retained segment, sentence spans in absolute note offsets."""
    out = []
    for seg in segments:
        spans = [
            (seg.start + s, seg.start + e)
            for s, e in segment_sentences(note.text[seg.start : seg.end])
        ]
        out.append((seg, spans))
    return out


def build_note_paragraphs(
    note: ClinicalNote,
    annotations: list[EvidenceAnnotation],
    section_filter: SectionFilter | None = None,
    window: int = 20,
    overlap: int = 5,
) -> list[Paragraph]:
    """Build labeled paragraphs for one note.

    Windows are built per retained section segment and never cross segment
    boundaries. Sentence indices in the emitted paragraphs refer to the
    note-level sentence list (the concatenation of segment sentence lists).
    """
    segments = filter_sections(note, section_filter)
    seg_sentences = _sentences_for_segments(note, segments)

    all_spans = [span for _, spans in seg_sentences for span in spans]
    ann_per_sentence: list[list[EvidenceAnnotation]] = [
        [ann for ann in annotations if ann.overlaps(s, e)] for s, e in all_spans
    ]

    paragraphs: list[Paragraph] = []
    base = 0
    for seg_index, (seg, spans) in enumerate(seg_sentences):
        for win_index, (w_start, w_end) in enumerate(window_paragraphs(len(spans), window, overlap)):
            first = base + w_start
            last = base + w_end - 1
            evidence, sa_fine, si_label = derive_paragraph_labels(
                range(first, last + 1), ann_per_sentence
            )
            char_start = all_spans[first][0]
            char_end = all_spans[last][1]
            text = " ".join(note.text[s:e] for s, e in all_spans[first : last + 1])
            paragraphs.append(
                Paragraph(
                    paragraph_id=f"{note.note_id}/{seg_index}/{win_index}",
                    note_id=note.note_id,
                    stay_id=note.stay_id,
                    patient_id=note.patient_id,
                    section=seg.section,
                    sentence_range=(first, last),
                    char_range=(char_start, char_end),
                    text=text,
                    evidence=evidence,
                    sa_label=merge_sa_label(sa_fine) if evidence == "yes" else "neutral",
                    sa_label_fine=sa_fine,
                    si_label=si_label,
                )
            )
        base += len(spans)
    return paragraphs


def build_paragraphs(
    corpus: Corpus,
    section_filter: SectionFilter | None = None,
    window: int = 20,
    overlap: int = 5,
) -> list[Paragraph]:
    """Build paragraphs for every note, in stay order then note order."""
    section_filter = section_filter or SectionFilter()
    paragraphs: list[Paragraph] = []
    for stay in corpus.stays:
        for note in corpus.notes_for_stay(stay.stay_id):
            paragraphs.extend(
                build_note_paragraphs(
                    note,
                    corpus.annotations_by_note.get(note.note_id, []),
                    section_filter,
                    window,
                    overlap,
                )
            )
    return paragraphs
