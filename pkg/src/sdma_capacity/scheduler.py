"""Spatial-orthogonality channel assignment: users whose directions of
arrival are sufficiently separated share a physical channel, split into
spatial channels; tracked DOAs drift and force reassignment.

Users are a mapping user_id -> DOA in radians. All angles wrap into
[0, 2*pi) and separations are circular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "Assignment",
    "wrap_angle",
    "circular_distance",
    "signed_circular_difference",
    "assign_channels",
    "channels_required",
    "track_doas",
    "reassign_if_violated",
]

TWO_PI = 2.0 * math.pi


def wrap_angle(theta: float) -> float:
    """Wrap an angle into [0, 2*pi)."""
    wrapped = math.fmod(theta, TWO_PI)
    return wrapped + TWO_PI if wrapped < 0.0 else wrapped


def circular_distance(a: float, b: float) -> float:
    """Shortest angular distance between two azimuths, in [0, pi]."""
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def signed_circular_difference(target: float, reference: float) -> float:
    """Signed shortest rotation from ``reference`` to ``target``, in [-pi, pi)."""
    return (target - reference + math.pi) % TWO_PI - math.pi


@dataclass
class Assignment:
    """Channel map: (user_id, physical_channel, spatial_channel) triples,
    sorted by user_id, valid under the stored separation threshold."""

    entries: list[tuple[int, int, int]]
    theta_min: float

    def physical_channel_count(self) -> int:
        return len({physical for _, physical, _ in self.entries})

    def valid_for(self, doas: Mapping[int, float]) -> bool:
        """Do the (possibly moved) DOAs still satisfy the separation rule?"""
        groups: dict[int, list[float]] = {}
        for user_id, physical, _ in self.entries:
            groups.setdefault(physical, []).append(wrap_angle(doas[user_id]))
        for members in groups.values():
            for i, a in enumerate(members):
                for b in members[i + 1:]:
                    if circular_distance(a, b) < self.theta_min:
                        return False
        return True


def _check_theta_min(theta_min: float) -> None:
    if not (0.0 < theta_min <= math.pi):
        raise ValueError(f"theta_min must lie in (0, pi], got {theta_min}")


def assign_channels(doas: Mapping[int, float], theta_min: float) -> Assignment:
    """Greedy first-fit over DOA-sorted users.

    Each user joins the lowest-index physical channel where it keeps a
    circular distance >= theta_min to every member, or opens a new one.
    Spatial channel indices follow DOA order within a physical channel.
    The DOA sort makes the result independent of input ordering.
    """
    _check_theta_min(theta_min)
    ordered = sorted(
        ((wrap_angle(theta), user_id) for user_id, theta in doas.items())
    )
    channels: list[list[float]] = []
    placed: list[tuple[int, int, int]] = []
    for theta, user_id in ordered:
        for idx, members in enumerate(channels):
            if all(circular_distance(theta, other) >= theta_min for other in members):
                placed.append((user_id, idx, len(members)))
                members.append(theta)
                break
        else:
            placed.append((user_id, len(channels), 0))
            channels.append([theta])
    placed.sort()
    return Assignment(entries=placed, theta_min=theta_min)


def channels_required(doas: Mapping[int, float], theta_min: float) -> int:
    """Physical channels the greedy assignment needs; 0 for no users."""
    return assign_channels(doas, theta_min).physical_channel_count()


def track_doas(
    doas: Mapping[int, float],
    observations: Iterable[tuple[int, float]],
    alpha: float,
) -> dict[int, float]:
    """Exponential smoothing on the circle.

    Each observed user moves a fraction ``alpha`` of the signed shortest
    rotation toward its observation; alpha = 1 replaces the DOA outright.
    Observations apply in order; unobserved users are untouched.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    updated = {user_id: wrap_angle(theta) for user_id, theta in doas.items()}
    for user_id, observed in observations:
        if user_id not in updated:
            raise KeyError(f"observation for unknown user_id {user_id}")
        current = updated[user_id]
        updated[user_id] = wrap_angle(
            current + alpha * signed_circular_difference(wrap_angle(observed), current)
        )
    return updated


def reassign_if_violated(doas: Mapping[int, float], current: Assignment) -> Assignment:
    """Keep ``current`` while it is still valid for the new DOAs, else redo
    the greedy assignment at the same threshold."""
    assigned_ids = {user_id for user_id, _, _ in current.entries}
    if assigned_ids != set(doas):
        raise ValueError("assignment covers a different user set than the given DOAs")
    if current.valid_for(doas):
        return current
    return assign_channels(doas, current.theta_min)
