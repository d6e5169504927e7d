from evistay.metrics.confusion import (  # noqa: F401
    ClassMetrics,
    ConfusionMatrix,
    confusion_matrix,
    f1_score,
    macro_average,
    per_class_prf,
    round_half_up,
)
from evistay.metrics.paper_check import (  # noqa: F401
    check_reference_arithmetic,
    reference_arithmetic_summary,
)
from evistay.metrics.report import evaluation_report, render_report_text  # noqa: F401
