from sourcelab.reconstruction.directions import (
    DirectionPair,
    directions_for_gamma,
    directions_for_gammas,
)
from sourcelab.reconstruction.elastic import (
    ThetaSystem,
    elastic_b_entries,
    recover_trace_hat_elastic,
)
from sourcelab.reconstruction.recover import (
    recover_coefficients,
    recover_sigma_hat_em,
    recover_sigma_hat_poly,
)
from sourcelab.reconstruction.stability import ProbeRow, stability_probe
from sourcelab.reconstruction.synthesis import (
    FourierCoefficientGrid,
    ReconstructionResult,
    gamma_grid,
    inverse_fourier_cutoff,
    reconstruct,
    tail_integral_oracle,
)
