"""
Library-wide defaults. A ``local_settings`` module on the python path
overrides any of these by star import (see the bottom of this file).
"""

from cdislogging import get_logger

logger = get_logger(__name__)

#: ``VERSION: str``
#: Version string recorded in every run manifest.
VERSION = "0.1.0"

#: ``SCHEMA_VERSION: int``
#: The experiment configuration schema this version of the library reads.
SCHEMA_VERSION = 1

#: ``LOG_LEVEL: str``
#: Default level for the command line tool.
LOG_LEVEL = "info"

#: ``GRID_HALF_WIDTH: float``
#: Half the side length of the computational box. 2.0 gives a box of side
#: L = 4, padding the unit ball by a factor of two.
GRID_HALF_WIDTH = 2.0

#: ``GRID_POINTS: int``
#: Default number of nodes per axis; must be a power of two.
GRID_POINTS = 64

#: ``EIGENVALUE_TOLERANCE: float``
#: Relative tolerance for non-negative definiteness. Nodal eigenvalues down
#: to ``-EIGENVALUE_TOLERANCE * max Frobenius norm`` are accepted.
EIGENVALUE_TOLERANCE = 1e-10

#: ``CLAMP_MASS_TOLERANCE: float``
#: Largest relative mass a Gaussian bump may lose when clamped to the unit
#: ball.
CLAMP_MASS_TOLERANCE = 1e-6

#: ``HANKEL_SWITCH: float``
#: |z| at which Bessel and Hankel evaluation leaves the power series for
#: the large-argument expansion.
HANKEL_SWITCH = 8.0

#: ``HANKEL_SERIES_TERMS: int``
#: Number of power series terms used for |z| <= HANKEL_SWITCH.
HANKEL_SERIES_TERMS = 40

#: ``HANKEL_ASYMPTOTIC_TERMS: int``
#: Hard cap on the large-argument expansion; the sum also stops at its
#: smallest term.
HANKEL_ASYMPTOTIC_TERMS = 30

#: ``DIRECTION_COUNTS: Dict[int, int]``
#: Default size of the far-field direction grid per dimension.
DIRECTION_COUNTS = {2: 128, 3: 512}

#: ``ELASTIC_ZERO_FREQUENCY_RATIO: float``
#: Below ``|gamma| < ratio * k_p`` elastic trace recovery uses the antipodal
#: canonical-basis probes instead of the Theta system.
ELASTIC_ZERO_FREQUENCY_RATIO = 1e-8

#: ``HERMITIAN_RESIDUE: float``
#: Largest imaginary part, relative to the amplitude, that inverse Fourier
#: synthesis will discard.
HERMITIAN_RESIDUE = 1e-10

#: ``FREQUENCY_CHUNK: int``
#: Number of frequencies evaluated per batch by the direct Fourier sums.
FREQUENCY_CHUNK = 256

#: ``SYNTHESIS_CHUNK: int``
#: Number of gamma nodes summed per batch by inverse Fourier synthesis.
SYNTHESIS_CHUNK = 2048

try:
    # Import everything from ``local_settings``, if it exists.
    from local_settings import *
except ImportError:
    logger.debug("local_settings is not found")
