"""Closed-form average-BER models for interference-limited CDMA/SDMA links.

The single-cell models treat the sum of the other k-1 users' multiple-access
interference as Gaussian noise after the despreader:

    CDMA (omni):        P_b = Q(sqrt(3 N / (k - 1)))
    SDMA (gain D):      P_b = Q(sqrt(3 D N / (k - 1)))

The multi-cell extension adds the power-law loading of c equally-loaded
co-channel cells at reuse-distance ratio rho under path-loss exponent n:

    P_b = Q(sqrt(3 D N / ((k - 1) + c * k_c * rho**(-n))))

which reduces exactly to the single-cell forms at c = 0. With a single user
(k = 1, no interferers) the interference-limited model has no error
mechanism at all, so P_b = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .scalar_math import q_function

__all__ = [
    "SystemConfig",
    "BerCurve",
    "UnboundedCapacityError",
    "CapacityCapError",
    "ber_cdma",
    "ber_sdma",
    "ber_multicell",
    "capacity",
    "sweep_curve",
]

DEFAULT_REUSE_RATIO = 4.6  # first-tier co-channel distance for 7-cell reuse


class UnboundedCapacityError(ValueError):
    """Raised when the target BER is reachable at every user count."""


class CapacityCapError(RuntimeError):
    """Raised when the capacity scan hits its cap without bracketing the target."""


@dataclass
class SystemConfig:
    """Independent variables of the BER models.

    Parameters
    ----------
    spreading_factor : int
        Chips per bit, N >= 1.
    users : int
        Users in the cell of interest including the desired one, k >= 1.
    directivity : float
        Linear antenna directivity D >= 1 (1 = omnidirectional).
    path_loss_exponent : float
        Power-law decay exponent n in [2, 6].
    cochannel_cells : int
        Number of interfering co-channel cells c >= 0.
    reuse_distance_ratio : float
        Co-channel base distance over cell radius, > 1 whenever c > 0.
    cochannel_load : int or None
        Users per co-channel cell; None tracks ``users``.
    """

    spreading_factor: int
    users: int = 1
    directivity: float = 1.0
    path_loss_exponent: float = 4.0
    cochannel_cells: int = 0
    reuse_distance_ratio: float = DEFAULT_REUSE_RATIO
    cochannel_load: int | None = field(default=None)

    def __post_init__(self) -> None:
        if int(self.spreading_factor) != self.spreading_factor or self.spreading_factor < 1:
            raise ValueError(f"spreading_factor must be an integer >= 1, got {self.spreading_factor}")
        if int(self.users) != self.users or self.users < 1:
            raise ValueError(f"users must be an integer >= 1, got {self.users}")
        if not (math.isfinite(self.directivity) and self.directivity >= 1.0):
            raise ValueError(f"directivity must be >= 1, got {self.directivity}")
        if not (2.0 <= self.path_loss_exponent <= 6.0):
            raise ValueError(f"path_loss_exponent must lie in [2, 6], got {self.path_loss_exponent}")
        if int(self.cochannel_cells) != self.cochannel_cells or self.cochannel_cells < 0:
            raise ValueError(f"cochannel_cells must be an integer >= 0, got {self.cochannel_cells}")
        if self.cochannel_cells > 0 and not self.reuse_distance_ratio > 1.0:
            raise ValueError(
                f"reuse_distance_ratio must exceed 1 when cochannel_cells > 0, got {self.reuse_distance_ratio}"
            )
        if not self.reuse_distance_ratio > 0.0:
            raise ValueError(f"reuse_distance_ratio must be positive, got {self.reuse_distance_ratio}")
        if self.cochannel_load is not None and (
            int(self.cochannel_load) != self.cochannel_load or self.cochannel_load < 0
        ):
            raise ValueError(f"cochannel_load must be an integer >= 0, got {self.cochannel_load}")

    @property
    def effective_cochannel_load(self) -> int:
        return self.users if self.cochannel_load is None else self.cochannel_load


@dataclass
class BerCurve:
    """One plotted family: (user count, average bit error probability) points."""

    label: str
    points: list[tuple[int, float]]

    def __post_init__(self) -> None:
        ks = [k for k, _ in self.points]
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ValueError("curve points must be strictly increasing in k")

    def user_counts(self) -> list[int]:
        return [k for k, _ in self.points]

    def bers(self) -> list[float]:
        return [p for _, p in self.points]


def _gaussian_ber(spreading_factor: int, users: int, directivity: float, extra_load: float) -> float:
    # One shared code path so the c=0 / D=1 reductions are bitwise exact.
    if users == 1 and extra_load == 0.0:
        return 0.0
    denom = (users - 1) + extra_load
    if denom <= 0.0:
        return 0.0
    return q_function(math.sqrt(3.0 * directivity * spreading_factor / denom))


def ber_cdma(spreading_factor: int, users: int) -> float:
    """Average BER of an interference-limited CDMA cell with an omni antenna."""
    if spreading_factor < 1:
        raise ValueError(f"spreading_factor must be >= 1, got {spreading_factor}")
    if users < 1:
        raise ValueError(f"users must be >= 1, got {users}")
    return _gaussian_ber(spreading_factor, users, 1.0, 0.0)


def ber_sdma(spreading_factor: int, users: int, directivity: float) -> float:
    """Average BER with per-user beams of linear directivity D.

    D = 1 reduces exactly (bitwise) to :func:`ber_cdma`.
    """
    if spreading_factor < 1:
        raise ValueError(f"spreading_factor must be >= 1, got {spreading_factor}")
    if users < 1:
        raise ValueError(f"users must be >= 1, got {users}")
    if not directivity >= 1.0:
        raise ValueError(f"directivity must be >= 1, got {directivity}")
    return _gaussian_ber(spreading_factor, users, directivity, 0.0)


def ber_multicell(cfg: SystemConfig) -> float:
    """Average BER including co-channel cell loading.

    The out-of-cell term c * k_c * rho**(-n) vanishes at c = 0, recovering
    :func:`ber_sdma` exactly; it decays with the path-loss exponent, so the
    BER is strictly decreasing in n whenever the term is active.
    """
    extra = (
        cfg.cochannel_cells
        * cfg.effective_cochannel_load
        * cfg.reuse_distance_ratio ** (-cfg.path_loss_exponent)
    )
    return _gaussian_ber(cfg.spreading_factor, cfg.users, cfg.directivity, extra)


def capacity(target: float, cfg: SystemConfig, k_cap: int = 10**6) -> int:
    """Largest user count whose average BER stays at or below ``target``.

    Linear scan from k = 1 upward (the model is monotone in k); ties count
    as supported. ``cfg.users`` is ignored. Raises
    :class:`UnboundedCapacityError` for target >= 0.5 (Q of a positive
    argument never reaches 0.5) and :class:`CapacityCapError` when even
    ``k_cap`` users satisfy the target.
    """
    if not target > 0.0:
        raise ValueError(f"target BER must be positive, got {target}")
    if target >= 0.5:
        raise UnboundedCapacityError(
            f"target {target} is met at every user count; capacity is unbounded"
        )
    k = 1
    while k < k_cap:
        if ber_multicell(replace(cfg, users=k + 1)) > target:
            return k
        k += 1
    raise CapacityCapError(f"capacity exceeds the scan cap k_cap={k_cap}")


def sweep_curve(cfg: SystemConfig, k_from: int, k_to: int, label: str = "") -> BerCurve:
    """Evaluate :func:`ber_multicell` for every k in [k_from, k_to]."""
    if not 2 <= k_from <= k_to:
        raise ValueError(f"need 2 <= k_from <= k_to, got [{k_from}, {k_to}]")
    points = [(k, ber_multicell(replace(cfg, users=k))) for k in range(k_from, k_to + 1)]
    return BerCurve(label=label, points=points)
