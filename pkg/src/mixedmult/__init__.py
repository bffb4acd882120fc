"""Exact Hilbert polynomials, mixed multiplicities and mixed volumes for monomial data."""
from .errors import (
    FitCorruption,
    InfiniteLength,
    InputError,
    InvariantFailure,
    MixedMultError,
    PreconditionError,
    UnstableRegion,
)
from .hilbert import (
    FitConfig,
    GradedPresentation,
    extract_mixed_multiplicities,
    fit_hilbert,
    hilbert_function,
    presentation_mixed,
)
from .monomial import MonomialIdeal, RingContext, ideal, parse_ideal
from .multiplicities import (
    IdealTuple,
    analytic_spread,
    bhattacharya_mixed,
    gm_multiplicity,
    milnor_sequence,
    mixed_multiplicities,
    mixed_sequence,
    multiplicity_sequence,
    rees_algebra_multiplicity,
    samuel_multiplicity,
    staircase_volume_multiplicity,
)
from .polytope import LatticePolytope, hull, mixed_volume, volume
from .rees import rees_mixed_multiplicities

__version__ = "0.1.0"
