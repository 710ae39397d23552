from sourcelab.farfield.directions import (
    antipodal_pairs,
    direction_grid,
    direction_pairs,
    with_antipodes,
)
from sourcelab.farfield.patterns import (
    ElasticWavenumbers,
    FarFieldChannel,
    FarFieldEnsemble,
    FarFieldSample,
    beta,
    elastic_farfield,
    em_farfield,
    farfield_channels,
    farfield_ensemble,
    largest_wavenumber,
    fourier_at,
    poly_farfield,
)
