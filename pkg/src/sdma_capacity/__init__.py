"""SDMA vs CDMA cellular capacity analysis.

Closed-form Gaussian-approximation BER models, an adaptive-array
beamforming core with interference nulling, a chip-level Monte Carlo link
simulator, and DOA-based spatial channel assignment, with a CSV-emitting
CLI (``sdma-capacity``).
"""

from .beams import (
    ArrayGeometry,
    BeamPattern,
    DegenerateGeometryError,
    DegeneratePatternError,
    InfeasibleNullsError,
    array_pattern,
    beamformer_output,
    directivity,
    flat_top_pattern,
    null_steer,
    pattern_gain,
    steering_vector,
)
from .ber import (
    BerCurve,
    CapacityCapError,
    SystemConfig,
    UnboundedCapacityError,
    ber_cdma,
    ber_multicell,
    ber_sdma,
    capacity,
    sweep_curve,
)
from .montecarlo import MonteCarloConfig, MonteCarloReport, simulate_cdma, simulate_sdma
from .scalar_math import db_to_linear, q_function, q_inverse
from .scheduler import (
    Assignment,
    assign_channels,
    channels_required,
    circular_distance,
    reassign_if_violated,
    signed_circular_difference,
    track_doas,
    wrap_angle,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "Assignment",
    "BeamPattern",
    "BerCurve",
    "CapacityCapError",
    "DegenerateGeometryError",
    "DegeneratePatternError",
    "InfeasibleNullsError",
    "MonteCarloConfig",
    "MonteCarloReport",
    "SystemConfig",
    "UnboundedCapacityError",
    "array_pattern",
    "assign_channels",
    "beamformer_output",
    "ber_cdma",
    "ber_multicell",
    "ber_sdma",
    "capacity",
    "channels_required",
    "circular_distance",
    "db_to_linear",
    "directivity",
    "flat_top_pattern",
    "null_steer",
    "pattern_gain",
    "q_function",
    "q_inverse",
    "reassign_if_violated",
    "signed_circular_difference",
    "simulate_cdma",
    "simulate_sdma",
    "steering_vector",
    "sweep_curve",
    "track_doas",
    "wrap_angle",
]
