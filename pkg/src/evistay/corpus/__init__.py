from evistay.corpus.records import (  # noqa: F401
    ClinicalNote,
    Corpus,
    CorpusError,
    EvidenceAnnotation,
    HospitalStay,
    Paragraph,
    load_corpus,
    read_jsonl,
    write_jsonl,
)
from evistay.corpus.sentences import segment_sentences  # noqa: F401
from evistay.corpus.sections import (  # noqa: F401
    ALLOWED_SECTIONS,
    SectionFilter,
    filter_sections,
)
from evistay.corpus.windows import window_paragraphs  # noqa: F401
from evistay.corpus.labeling import build_paragraphs, derive_paragraph_labels  # noqa: F401
from evistay.corpus.splits import DatasetSplit, split_by_patient  # noqa: F401
from evistay.corpus.sampling import downsample_no_evidence  # noqa: F401
from evistay.corpus.stats import corpus_stats  # noqa: F401
