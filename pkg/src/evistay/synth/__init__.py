from evistay.synth.generator import (  # noqa: F401
    SynthCorpus,
    SynthSpec,
    default_label_mix,
    generate_corpus,
    generate_neutral_stays,
    generate_stay,
    write_synth_corpus,
)
from evistay.synth.templates import TemplatePools, load_default_pools  # noqa: F401
