"""Label vocabularies shared across the corpus, model and metrics layers.

Label tuples double as the canonical class orderings: classifier heads,
confusion matrices and serialized checkpoints all index classes by position
in these tuples.
"""

from __future__ import annotations

EVIDENCE_LABELS = ("yes", "no")

# Fine-grained SA labels as annotated at sentence level.
SA_FINE_LABELS = ("positive", "negative", "unsure", "neutral")

# Training-time SA labels: negative and unsure are grouped because neither
# carries solid evidence that the self-harm was an actual attempt.
SA_LABELS = ("positive", "neg_unsure", "neutral")

SI_LABELS = ("positive", "negative", "neutral")

SA_METHODS = ("T36_T50", "T51_T65", "T71", "X71_X83")

# Window-label precedence: the rarer affirmative evidence wins when a window
# mixes sentence labels.
SA_FINE_PRECEDENCE = ("positive", "unsure", "negative")
SI_PRECEDENCE = ("positive", "negative")

_SA_MERGE = {
    "positive": "positive",
    "negative": "neg_unsure",
    "unsure": "neg_unsure",
    "neg_unsure": "neg_unsure",
    "neutral": "neutral",
}


def merge_sa_label(label: str) -> str:
    """Map a fine-grained SA label onto {positive, neg_unsure, neutral}.

    Idempotent: merged labels map to themselves.
    """
    try:
        return _SA_MERGE[label]
    except KeyError:
        raise ValueError(f"unknown SA label: {label!r}") from None


def label_index(label: str, ordering: tuple[str, ...]) -> int:
    try:
        return ordering.index(label)
    except ValueError:
        raise ValueError(f"label {label!r} not in ordering {ordering}") from None
