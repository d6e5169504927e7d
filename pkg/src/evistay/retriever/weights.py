"""Log-smoothed class weights for imbalanced tasks."""

from __future__ import annotations

import math
from typing import Mapping


def compute_class_weights(counts: Mapping[str, int], gamma: float = 2.5) -> dict[str, float]:
    """w_l = max(1, ln(gamma * N / N_l)) with N the total count for the task.

    Raises on a zero or negative count: the weight would be undefined.
    """
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if not counts:
        raise ValueError("no class counts given")
    for label, count in counts.items():
        if count <= 0:
            raise ValueError(f"class {label!r} has count {count}; weight undefined")
    total = sum(counts.values())
    return {
        label: max(1.0, math.log(gamma * total / count)) for label, count in counts.items()
    }
