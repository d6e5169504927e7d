"""Evidence retrieval and hospital-stay level suicidal-behavior prediction.

The package turns a corpus of clinical notes into overlapping sentence-window
paragraphs, trains a multi-task paragraph classifier (evidence main task, SA
and SI auxiliary tasks), aggregates retrieved evidence per hospital stay with
an attention stack over paragraph vectors, and scores everything with a
macro-averaged precision/recall/F1 harness.
"""

__version__ = "0.1.0"

from evistay.labels import (  # noqa: F401
    EVIDENCE_LABELS,
    SA_FINE_LABELS,
    SA_LABELS,
    SI_LABELS,
    merge_sa_label,
)
