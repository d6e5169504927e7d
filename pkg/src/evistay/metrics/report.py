"""Evaluation reports: one confusion matrix + metric table per task."""

from __future__ import annotations

from typing import Mapping, Sequence

from evistay.labels import EVIDENCE_LABELS, SA_LABELS, SI_LABELS
from evistay.metrics.confusion import ConfusionMatrix, confusion_matrix, per_class_prf
from evistay.metrics.paper_check import reference_arithmetic_summary

TASK_LABELS: dict[str, tuple[str, ...]] = {
    "paragraph_evidence": EVIDENCE_LABELS,
    "paragraph_sa": SA_LABELS,
    "paragraph_si": SI_LABELS,
    "stay_sa": SA_LABELS,
    "stay_si": SI_LABELS,
}

TASK_ORDER = tuple(TASK_LABELS)


def evaluation_report(
    task_pairs: Mapping[str, tuple[Sequence[str], Sequence[str]]],
    include_reference_check: bool = False,
) -> dict:
    """Score every provided task.

    ``task_pairs`` maps task name -> (gold labels, predicted labels). Tasks
    missing from the mapping (or empty) are omitted with a notice rather
    than failing the whole report.
    """
    report: dict = {"tasks": {}, "notices": []}
    for task in TASK_ORDER:
        pair = task_pairs.get(task)
        if pair is None or len(pair[0]) == 0:
            report["notices"].append(f"task {task}: no data, omitted")
            continue
        gold, pred = pair
        labels = TASK_LABELS[task]
        matrix = confusion_matrix(gold, pred, labels)
        metrics = per_class_prf(matrix)
        overall_p, overall_r, overall_f = metrics.overall()
        report["tasks"][task] = {
            "labels": list(labels),
            "confusion": [list(row) for row in matrix.counts],
            "per_class": {
                label: {
                    "precision": metrics.precision[i],
                    "recall": metrics.recall[i],
                    "f1": metrics.f1[i],
                }
                for i, label in enumerate(labels)
            },
            "overall": {"precision": overall_p, "recall": overall_r, "f1": overall_f},
            "instances": matrix.total,
        }
        for flag in metrics.zero_division_flags:
            report["notices"].append(f"task {task}: {flag}")
    if include_reference_check:
        report["paper_arithmetic"] = reference_arithmetic_summary()
    return report


def _format_matrix(labels: Sequence[str], counts: Sequence[Sequence[int]]) -> list[str]:
    width = max(
        [len(str(c)) for row in counts for c in row] + [len(lbl) for lbl in labels] + [4]
    )
    head = " " * (width + 2) + " ".join(f"{lbl:>{width}}" for lbl in labels)
    lines = [head]
    for lbl, row in zip(labels, counts):
        lines.append(f"{lbl:>{width}}  " + " ".join(f"{c:>{width}}" for c in row))
    return lines


def render_report_text(report: dict) -> str:
    """Aligned text tables; column order Precision, Recall, F1-score."""
    lines: list[str] = []
    for task, block in report["tasks"].items():
        labels = block["labels"]
        lines.append(f"== {task} ({block['instances']} instances) ==")
        lines.append("confusion matrix (rows gold, columns predicted):")
        lines.extend("  " + ln for ln in _format_matrix(labels, block["confusion"]))
        name_w = max(len(lbl) for lbl in labels + ["overall"])
        lines.append(f"  {'':<{name_w}}  Precision  Recall  F1-score")
        for label in labels:
            m = block["per_class"][label]
            lines.append(
                f"  {label:<{name_w}}  {m['precision']:>9.4f}  {m['recall']:>6.4f}  {m['f1']:>8.4f}"
            )
        o = block["overall"]
        lines.append(
            f"  {'overall':<{name_w}}  {o['precision']:>9.4f}  {o['recall']:>6.4f}  {o['f1']:>8.4f}"
        )
        lines.append("")
    for notice in report["notices"]:
        lines.append(f"notice: {notice}")
    if "paper_arithmetic" in report:
        pa = report["paper_arithmetic"]
        lines.append(
            f"paper-arithmetic: {pa['status']} "
            f"({pa['matches']}/{pa['cells']} cells exact, "
            f"{len(pa['errata'])} documented errata, {len(pa['mismatches'])} mismatches)"
        )
        for cell in pa["errata"]:
            lines.append(
                "  erratum: {table} {label} {metric}: published {published:.2f}, "
                "derived {computed:.2f} (transposed pair)".format(**cell)
            )
    return "\n".join(lines) + "\n"
