"""Adaptive antenna array core: steering vectors, the weighted combiner,
azimuth beam patterns, numerical directivity, interference-nulling weight
synthesis, and the ideal flat-top pattern.

Geometry is a linear array in a single azimuth plane with element positions
in wavelength units. Angles are radians; 0 is array broadside and the phase
of element i toward angle theta is exp(+1j * 2*pi * p_i * sin(theta)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ArrayGeometry",
    "BeamPattern",
    "InfeasibleNullsError",
    "DegenerateGeometryError",
    "DegeneratePatternError",
    "steering_vector",
    "beamformer_output",
    "pattern_gain",
    "directivity",
    "null_steer",
    "flat_top_pattern",
    "array_pattern",
]

TWO_PI = 2.0 * math.pi
MIN_NULL_SEPARATION = math.radians(1.0)
DEFAULT_GRID_POINTS = 3600


class InfeasibleNullsError(ValueError):
    """More null constraints than the array has degrees of freedom."""


class DegenerateGeometryError(ValueError):
    """Null set leaves no usable response toward the desired direction."""


class DegeneratePatternError(ValueError):
    """Weights produce an identically-zero pattern."""


@dataclass
class ArrayGeometry:
    """Element positions along a line, in wavelengths, strictly increasing."""

    positions: np.ndarray

    def __post_init__(self) -> None:
        self.positions = np.asarray(self.positions, dtype=float)
        if self.positions.ndim != 1 or self.positions.size < 1:
            raise ValueError("need at least one element position")
        if not np.all(np.isfinite(self.positions)):
            raise ValueError("element positions must be finite")
        if np.any(np.diff(self.positions) <= 0.0):
            raise ValueError("element positions must be strictly increasing")

    @property
    def num_elements(self) -> int:
        return int(self.positions.size)

    @classmethod
    def uniform(cls, num_elements: int, spacing: float = 0.5) -> "ArrayGeometry":
        """Uniform linear array with the given spacing in wavelengths."""
        if num_elements < 1:
            raise ValueError(f"num_elements must be >= 1, got {num_elements}")
        if not spacing > 0.0:
            raise ValueError(f"spacing must be positive, got {spacing}")
        return cls(spacing * np.arange(num_elements, dtype=float))


@dataclass
class BeamPattern:
    """Power gain sampled on a uniform azimuth grid over [0, 2*pi)."""

    azimuth_grid: np.ndarray
    gains: np.ndarray

    def __post_init__(self) -> None:
        self.azimuth_grid = np.asarray(self.azimuth_grid, dtype=float)
        self.gains = np.asarray(self.gains, dtype=float)
        if self.azimuth_grid.shape != self.gains.shape:
            raise ValueError("grid and gains must have the same length")
        if self.azimuth_grid.size < 360:
            raise ValueError("pattern grid needs at least 360 points")
        if np.any(self.gains < 0.0):
            raise ValueError("gains must be non-negative")

    def mean_gain(self) -> float:
        # Uniform grid on a periodic domain: the plain average is the
        # trapezoid-rule azimuth mean.
        return float(np.mean(self.gains))

    def peak_gain(self) -> float:
        return float(np.max(self.gains))

    def directivity(self) -> float:
        mean = self.mean_gain()
        if mean <= 0.0:
            raise DegeneratePatternError("pattern is identically zero")
        return self.peak_gain() / mean

    def normalized(self) -> "BeamPattern":
        """Rescale so the grid-average gain is exactly 1."""
        mean = self.mean_gain()
        if mean <= 0.0:
            raise DegeneratePatternError("cannot normalize an all-zero pattern")
        return BeamPattern(self.azimuth_grid, self.gains / mean)


def _azimuth_grid(num_points: int) -> np.ndarray:
    return np.arange(num_points) * (TWO_PI / num_points)


def steering_vector(geom: ArrayGeometry, theta: float) -> np.ndarray:
    """Array response toward azimuth ``theta``; unit-magnitude entries."""
    return np.exp(1j * TWO_PI * geom.positions * math.sin(theta))


def beamformer_output(weights: np.ndarray, snapshot: np.ndarray) -> complex:
    """Combiner output sum_i conj(w_i) * x_i for one snapshot."""
    weights = np.asarray(weights)
    snapshot = np.asarray(snapshot)
    if weights.shape != snapshot.shape:
        raise ValueError(
            f"weights and snapshot lengths differ: {weights.shape} vs {snapshot.shape}"
        )
    return complex(np.vdot(weights, snapshot))


def _gains_on_grid(weights: np.ndarray, geom: ArrayGeometry, thetas: np.ndarray) -> np.ndarray:
    phases = TWO_PI * np.sin(thetas)[:, None] * geom.positions[None, :]
    response = np.exp(1j * phases) @ np.conj(weights)
    return np.abs(response) ** 2


def pattern_gain(weights: np.ndarray, geom: ArrayGeometry, theta) -> float | np.ndarray:
    """Power gain |w^H a(theta)|^2; accepts a scalar angle or an array."""
    weights = np.asarray(weights)
    if weights.shape != (geom.num_elements,):
        raise ValueError(f"expected {geom.num_elements} weights, got shape {weights.shape}")
    thetas = np.asarray(theta, dtype=float)
    gains = _gains_on_grid(weights, geom, np.atleast_1d(thetas))
    return float(gains[0]) if thetas.ndim == 0 else gains


def directivity(
    weights: np.ndarray, geom: ArrayGeometry, num_points: int = DEFAULT_GRID_POINTS
) -> float:
    """Peak over azimuth-average power gain on a uniform grid; always >= 1.

    Invariant under any nonzero complex rescaling of the weights.
    """
    gains = _gains_on_grid(np.asarray(weights), geom, _azimuth_grid(num_points))
    mean = float(np.mean(gains))
    if mean <= 0.0:
        raise DegeneratePatternError("weights produce an identically-zero pattern")
    return float(np.max(gains)) / mean


def array_pattern(
    weights: np.ndarray, geom: ArrayGeometry, num_points: int = DEFAULT_GRID_POINTS
) -> BeamPattern:
    """Sample the power pattern of a weighted array on a uniform grid."""
    grid = _azimuth_grid(num_points)
    return BeamPattern(grid, _gains_on_grid(np.asarray(weights), geom, grid))


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def null_steer(geom: ArrayGeometry, desired: float, interferers) -> np.ndarray:
    """Weights with unit response toward ``desired`` and nulls at ``interferers``.

    The desired steering vector is projected onto the orthogonal complement
    of the interferer steering-vector span, so every null is exact up to
    rounding. With no interferers this is the matched filter a(desired)/M.

    Raises
    ------
    InfeasibleNullsError
        If there are more interferers than ``num_elements - 1``.
    DegenerateGeometryError
        If an interferer sits within one degree of the desired direction,
        or the projection leaves (numerically) no desired response, as for
        the mirror angle of a linear array.
    """
    interferers = list(interferers)
    m = geom.num_elements
    if len(interferers) > m - 1:
        raise InfeasibleNullsError(
            f"{len(interferers)} nulls need at least {len(interferers) + 1} elements, have {m}"
        )
    for theta in interferers:
        if _circular_distance(theta, desired) < MIN_NULL_SEPARATION:
            raise DegenerateGeometryError(
                f"interferer at {theta:.6f} rad is within 1 degree of the desired direction"
            )
    a_desired = steering_vector(geom, desired)
    if not interferers:
        return a_desired / m

    constraints = np.column_stack([steering_vector(geom, t) for t in interferers])
    u, s, _ = np.linalg.svd(constraints, full_matrices=False)
    tol = s[0] * max(constraints.shape) * np.finfo(float).eps if s.size else 0.0
    basis = u[:, s > tol]
    residual = a_desired - basis @ (basis.conj().T @ a_desired)
    # v^H a(desired) = ||v||^2, so scaling by it gives unit desired response.
    norm_sq = float(np.real(np.vdot(residual, residual)))
    if norm_sq < 1e-8 * m:
        raise DegenerateGeometryError(
            "desired steering vector lies (numerically) in the interferer span"
        )
    return residual / norm_sq


def flat_top_pattern(
    directivity_linear: float, pointing: float, num_points: int = DEFAULT_GRID_POINTS
) -> BeamPattern:
    """Ideal sector beam: constant gain D over angular width 2*pi/D, else zero.

    The beam occupies the half-open interval (pointing - pi/D, pointing + pi/D]
    so a grid-aligned beam covers exactly width/spacing points and the
    azimuth-mean gain is 1 analytically. D = 1 is omnidirectional.
    """
    d = float(directivity_linear)
    if not d >= 1.0:
        raise ValueError(f"directivity must be >= 1, got {d}")
    grid = _azimuth_grid(num_points)
    offset = math.pi - np.mod(math.pi - (grid - pointing), TWO_PI)  # signed, in (-pi, pi]
    half_width = math.pi / d
    gains = np.where((offset > -half_width) & (offset <= half_width), d, 0.0)
    return BeamPattern(grid, gains)
