from sourcelab.params.grid import SpatialGrid
from sourcelab.params.model import ModelKind, WaveModel
from sourcelab.params.source import SourceSpec, check_smoothness, validate_source
from sourcelab.params.strength import (
    StrengthField,
    gaussian_bump_matrix_strength,
    gaussian_bump_strength,
)
from sourcelab.params.transforms import GaussianBumpTransform, QuadratureTransform
