from sourcelab.scripting.config import (
    ExperimentConfig,
    load_config,
    parse_config,
    serialize_config,
    validate_config,
)
from sourcelab.scripting.experiment import (
    ExperimentRunner,
    OutputWriter,
    RunManifest,
    emit_plot_data,
    run,
)
