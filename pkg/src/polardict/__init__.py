"""Polar-domain dictionary design and grid localization for large planar arrays."""

from .coherence import (
    CoherenceParams,
    CoherenceReport,
    dictionary_coherence,
    dirichlet_mag,
    factorized_inner_mag,
    fresnel_c,
    fresnel_s,
    inner_product_mag,
    same_angle_coherence_approx,
)
from .geometry import (
    ArrayConfig,
    antenna_indices,
    antenna_position,
    aperture_length,
    fraunhofer_distance,
    fresnel_distance,
)
from .localization import (
    RmseCurve,
    TrialConfig,
    drop_ue,
    matched_filter_estimate,
    nearest_grid_point,
    received_signal,
    rmse_experiment,
)
from .sampling import (
    Dictionary,
    EmptyDictionaryError,
    GridPoint,
    SamplingConfig,
    angular_grid,
    build_dictionary,
    proposed_distances,
    uniform_distances,
)
from .steering import (
    AngularPair,
    PolarCoordinate,
    ResponseVector,
    angular_transform,
    exact_distance,
    exact_response,
    expansion_response,
    far_field_response,
    polar_to_cartesian,
    proposed_response,
    similarity,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayConfig", "antenna_indices", "antenna_position", "aperture_length",
    "fraunhofer_distance", "fresnel_distance",
    "PolarCoordinate", "AngularPair", "ResponseVector", "angular_transform",
    "polar_to_cartesian", "exact_distance", "exact_response", "expansion_response",
    "proposed_response", "far_field_response", "similarity",
    "CoherenceParams", "CoherenceReport", "inner_product_mag", "factorized_inner_mag",
    "dirichlet_mag", "fresnel_c", "fresnel_s", "same_angle_coherence_approx",
    "dictionary_coherence",
    "SamplingConfig", "GridPoint", "Dictionary", "EmptyDictionaryError",
    "angular_grid", "proposed_distances", "uniform_distances", "build_dictionary",
    "TrialConfig", "RmseCurve", "drop_ue", "nearest_grid_point", "received_signal",
    "matched_filter_estimate", "rmse_experiment",
    "__version__",
]
