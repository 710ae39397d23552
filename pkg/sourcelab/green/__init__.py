from sourcelab.green.hankel import bessel_j0y0, bessel_j1y1, hankel0, hankel1
from sourcelab.green.kernels import (
    SplitWavenumbers,
    helmholtz_green,
    polyharmonic_green,
    resolvent_symbol,
    split_resolvent_symbol,
    split_wavenumbers,
)
from sourcelab.green.near_field import asymptote_residual, near_field
