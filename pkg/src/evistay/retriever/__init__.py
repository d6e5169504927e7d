from evistay.retriever.encoder import Encoder, ToyEncoder, ToyEncoderConfig, hash_tokenize  # noqa: F401
from evistay.retriever.loss import multitask_loss, weighted_nll  # noqa: F401
from evistay.retriever.model import (  # noqa: F401
    RetrieverModel,
    build_toy_retriever,
    load_retriever,
    save_retriever,
)
from evistay.retriever.retrieve import (  # noqa: F401
    ParagraphPrediction,
    classify_paragraphs,
    retrieve_evidence,
    retrieve_evidence_from_paragraphs,
)
from evistay.retriever.train import (  # noqa: F401
    RetrieverTrainConfig,
    TrainedRetriever,
    evidence_macro_f1,
    train_retriever,
)
from evistay.retriever.weights import compute_class_weights  # noqa: F401
