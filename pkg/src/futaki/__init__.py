"""Exact Futaki invariants of polarized varieties with a C*-action, and the
adiabatic expansion of the Futaki invariant on resolutions of isolated
singularities.
"""

from .adiabatic import (
    CoefficientFamily,
    MetricInputs,
    ResolutionData,
    SingularPointData,
    build_coefficients,
    corollary_leading,
    default_metric_inputs,
    expansion_from_abcd,
    theorem_expansion,
)
from .characters import (
    AmbientSpec,
    CharacterSample,
    HypersurfaceSpec,
    PolytopeSpec,
    brute_force_character,
    character,
    spec_from_json,
)
from .cubics import ResolutionNumbers, cubic_model, instability_report
from .engine import FutakiResult, futaki, futaki_from_samples
from .errors import (
    ConsistencyFailure,
    DegreeOverflow,
    FutakiError,
    IncompleteInput,
    InvalidInput,
    ResourceLimit,
)
from .exact import AsymptoticExpansion, Polynomial, interpolate, ratio_expansion
from .toric import BlowupModel

__version__ = "0.1.0"

__all__ = [
    "AmbientSpec",
    "AsymptoticExpansion",
    "BlowupModel",
    "CharacterSample",
    "CoefficientFamily",
    "ConsistencyFailure",
    "DegreeOverflow",
    "FutakiError",
    "FutakiResult",
    "HypersurfaceSpec",
    "IncompleteInput",
    "InvalidInput",
    "MetricInputs",
    "Polynomial",
    "PolytopeSpec",
    "ResolutionData",
    "ResolutionNumbers",
    "ResourceLimit",
    "SingularPointData",
    "brute_force_character",
    "build_coefficients",
    "character",
    "corollary_leading",
    "cubic_model",
    "default_metric_inputs",
    "expansion_from_abcd",
    "futaki",
    "futaki_from_samples",
    "instability_report",
    "interpolate",
    "ratio_expansion",
    "spec_from_json",
    "theorem_expansion",
]
