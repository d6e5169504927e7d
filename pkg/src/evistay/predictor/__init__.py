from evistay.predictor.attention import AttentionStack, EncoderLayer, MultiHeadSelfAttention  # noqa: F401
from evistay.predictor.model import (  # noqa: F401
    PredictorConfig,
    StayPredictor,
    build_predictor,
    load_predictor,
    save_predictor,
)
from evistay.predictor.noise import (  # noqa: F401
    NoiseConfig,
    assemble_training_input,
    build_neutral_count_distribution,
    neutral_stays_needed,
    sample_neutral_count,
)
from evistay.predictor.pipeline import infer_stay_pipeline, infer_stays  # noqa: F401
from evistay.predictor.train import (  # noqa: F401
    PredictorTrainConfig,
    TrainedPredictor,
    train_predictor,
)
