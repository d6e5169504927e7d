"""Confusion matrices, per-class precision/recall/F1 and macro averages.

The "overall" figures are unweighted macro means over classes; per-class
precision and recall with a zero denominator are defined as 0 and flagged
in the owning report.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count matrix; rows are gold labels, columns are predictions."""

    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.labels)
        if len(self.counts) != k or any(len(row) != k for row in self.counts):
            raise ValueError("counts must be square with one row per label")
        if any(c < 0 for row in self.counts for c in row):
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.labels)))

    def row_sum(self, i: int) -> int:
        return sum(self.counts[i])

    def col_sum(self, j: int) -> int:
        return sum(row[j] for row in self.counts)


@dataclass(frozen=True)
class ClassMetrics:
    labels: tuple[str, ...]
    precision: tuple[float, ...]
    recall: tuple[float, ...]
    f1: tuple[float, ...]
    zero_division_flags: tuple[str, ...] = ()

    def overall(self) -> tuple[float, float, float]:
        return (
            macro_average(self.precision),
            macro_average(self.recall),
            macro_average(self.f1),
        )

    def per_class(self, label: str) -> tuple[float, float, float]:
        i = self.labels.index(label)
        return self.precision[i], self.recall[i], self.f1[i]


def confusion_matrix(
    gold: Sequence[str], predicted: Sequence[str], labels: Sequence[str]
) -> ConfusionMatrix:
    """counts[i][j] = number of instances with gold labels[i] predicted labels[j]."""
    if len(gold) != len(predicted):
        raise ValueError(f"length mismatch: {len(gold)} gold vs {len(predicted)} predicted")
    index = {label: i for i, label in enumerate(labels)}
    counts = [[0] * len(labels) for _ in labels]
    for g, p in zip(gold, predicted):
        if g not in index:
            raise ValueError(f"unknown gold label {g!r}")
        if p not in index:
            raise ValueError(f"unknown predicted label {p!r}")
        counts[index[g]][index[p]] += 1
    return ConfusionMatrix(labels=tuple(labels), counts=tuple(tuple(row) for row in counts))


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def per_class_prf(matrix: ConfusionMatrix) -> ClassMetrics:
    precision = []
    recall = []
    f1 = []
    flags = []
    for j, label in enumerate(matrix.labels):
        col = matrix.col_sum(j)
        row = matrix.row_sum(j)
        diag = matrix.counts[j][j]
        if col == 0:
            flags.append(f"precision[{label}]=0/0")
        if row == 0:
            flags.append(f"recall[{label}]=0/0")
        p = diag / col if col else 0.0
        r = diag / row if row else 0.0
        precision.append(p)
        recall.append(r)
        f1.append(f1_score(p, r))
    return ClassMetrics(
        labels=matrix.labels,
        precision=tuple(precision),
        recall=tuple(recall),
        f1=tuple(f1),
        zero_division_flags=tuple(flags),
    )


def macro_average(values: Sequence[float]) -> float:
    """Unweighted arithmetic mean over classes."""
    if not values:
        raise ValueError("macro average of zero classes is undefined")
    return sum(values) / len(values)


def round_half_up(value: float, digits: int = 2) -> float:
    """Round with ties away from zero, matching hand-rounded published figures."""
    quant = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quant, rounding=ROUND_HALF_UP))
