"""Patient-disjoint train/validation/test splits.

All of a patient's stays travel together so that no patient seen during
training appears in validation or test. The split is a deterministic
function of (stays, ratios, seed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from evistay.corpus.records import CorpusError, HospitalStay

SPLIT_NAMES = ("train", "validation", "test")


@dataclass(frozen=True)
class DatasetSplit:
    train: tuple[str, ...]
    validation: tuple[str, ...]
    test: tuple[str, ...]
    seed: int

    def stays(self, split: str) -> tuple[str, ...]:
        if split not in SPLIT_NAMES:
            raise ValueError(f"unknown split {split!r}")
        return getattr(self, split)

    def split_of(self, stay_id: str) -> str:
        for name in SPLIT_NAMES:
            if stay_id in set(getattr(self, name)):
                return name
        raise KeyError(stay_id)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "train": list(self.train),
            "validation": list(self.validation),
            "test": list(self.test),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "DatasetSplit":
        return cls(
            train=tuple(obj["train"]),
            validation=tuple(obj["validation"]),
            test=tuple(obj["test"]),
            seed=int(obj["seed"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "DatasetSplit":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def split_by_patient(
    stays: list[HospitalStay],
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> DatasetSplit:
    """Partition stays into patient-disjoint train/validation/test sets.

    Patients are shuffled with the seeded RNG and assigned greedily until
    each split's cumulative stay count reaches its target, so realized sizes
    deviate from the requested ratios by at most one patient's stays.
    """
    if any(r <= 0 for r in ratios):
        raise ValueError(f"ratios must be positive, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {ratios}")

    by_patient: dict[str, list[str]] = {}
    for stay in stays:
        by_patient.setdefault(stay.patient_id, []).append(stay.stay_id)
    patients = sorted(by_patient)
    if len(patients) < 3:
        raise CorpusError(f"need at least 3 patients to split, got {len(patients)}")

    rng = np.random.default_rng(seed)
    order = [patients[i] for i in rng.permutation(len(patients))]

    total = sum(len(v) for v in by_patient.values())
    targets = [ratios[0] * total, (ratios[0] + ratios[1]) * total]

    buckets: list[list[str]] = [[], [], []]
    assigned = 0
    cursor = 0
    for which, target in enumerate(targets):
        while cursor < len(order) and assigned < round(target):
            patient = order[cursor]
            buckets[which].extend(by_patient[patient])
            assigned += len(by_patient[patient])
            cursor += 1
    for patient in order[cursor:]:
        buckets[2].extend(by_patient[patient])

    # Every split must be non-empty; steal one patient from the largest
    # neighbour when rounding starved a bucket.
    for i in range(3):
        if buckets[i]:
            continue
        donor = max(range(3), key=lambda j: len(buckets[j]))
        picked = buckets[donor][-1]
        patient = next(p for p, sids in by_patient.items() if picked in sids)
        moved = [sid for sid in buckets[donor] if sid in set(by_patient[patient])]
        buckets[donor] = [sid for sid in buckets[donor] if sid not in set(moved)]
        buckets[i].extend(moved)

    return DatasetSplit(
        train=tuple(buckets[0]),
        validation=tuple(buckets[1]),
        test=tuple(buckets[2]),
        seed=seed,
    )
