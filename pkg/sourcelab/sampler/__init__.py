from sourcelab.sampler.gmig import (
    FieldRealization,
    sample_ensemble,
    sample_scalar,
    sample_vector,
    sampler_variance_oracle,
)
from sourcelab.sampler.leray import leray_project
