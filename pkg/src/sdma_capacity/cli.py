"""Deterministic command-line front end emitting CSV.

Subcommands: ``curves`` (BER-vs-users families), ``capacity`` (largest user
count meeting a target BER), ``montecarlo`` (chip-level link simulation),
``beampattern`` (flat-top or array pattern export), ``assign`` (DOA-based
channel assignment).

Settings merge from an optional ``--config`` file of flat ``key = value``
lines (keys are flag names with underscores, ``#`` comments, lists
comma-separated) with command-line flags taking precedence. Exit codes:
0 success, 2 usage or validation error, 3 domain infeasibility.
"""

from __future__ import annotations

import argparse
import math
import sys

from .beams import (
    ArrayGeometry,
    DegenerateGeometryError,
    InfeasibleNullsError,
    array_pattern,
    flat_top_pattern,
    null_steer,
)
from .ber import CapacityCapError, SystemConfig, UnboundedCapacityError, capacity, sweep_curve
from .montecarlo import MonteCarloConfig, simulate_cdma, simulate_sdma
from .scalar_math import db_to_linear
from .scheduler import assign_channels

USAGE_ERROR = 2
INFEASIBLE_ERROR = 3

_ANTENNA_LABELS = ("flat_top", "omni")


class _UsageError(ValueError):
    pass


def _fmt(value: float) -> str:
    return format(float(value), ".6g")


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise _UsageError(f"expected a boolean, got {text!r}")


def _parse_float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


# key -> coercer applied to config-file strings
_COERCERS = {
    "spreading_factor": int,
    "users": int,
    "k_from": int,
    "k_to": int,
    "cochannel_cells": int,
    "cochannel_load": int,
    "bits": int,
    "seed": int,
    "elements": int,
    "directivity_db": float,
    "reuse_ratio": float,
    "target_ber": float,
    "spacing": float,
    "desired_deg": float,
    "pointing_deg": float,
    "theta_min_deg": float,
    "path_loss": _parse_float_list,
    "null_deg": _parse_float_list,
    "antennas": str,
    "mode": str,
    "doa_file": str,
    "output": str,
    "flat_top": _parse_bool,
}


def _parse_config_file(path: str) -> dict[str, str]:
    raw: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, value = stripped.partition("=")
            if not sep:
                raise _UsageError(f"{path}:{lineno}: expected 'key = value'")
            raw[key.strip()] = value.strip()
    return raw


def _merge(args: argparse.Namespace, keys: dict[str, object]) -> dict[str, object]:
    """Resolve each setting: flag if given, else config file, else default."""
    file_values = _parse_config_file(args.config) if args.config else {}
    settings: dict[str, object] = {}
    for key, default in keys.items():
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            settings[key] = flag_value
        elif key in file_values:
            try:
                settings[key] = _COERCERS[key](file_values[key])
            except ValueError as exc:
                raise _UsageError(f"config key {key!r}: {exc}") from exc
        else:
            settings[key] = default
    return settings


def _require(settings: dict, *keys: str) -> None:
    missing = [key.replace("_", "-") for key in keys if settings[key] is None]
    if missing:
        raise _UsageError("missing required setting(s): --" + ", --".join(missing))


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _parse_antennas(spec: str) -> list[str]:
    labels = [part.strip() for part in spec.split(",") if part.strip()]
    for label in labels:
        if label not in _ANTENNA_LABELS:
            raise _UsageError(
                f"unknown antenna {label!r}; choose from {', '.join(_ANTENNA_LABELS)}"
            )
    if not labels:
        raise _UsageError("antenna list is empty")
    return sorted(set(labels))


def _antenna_directivity(label: str, directivity_db: float) -> float:
    return 1.0 if label == "omni" else db_to_linear(directivity_db)


def cmd_curves(args: argparse.Namespace) -> int:
    settings = _merge(
        args,
        {
            "spreading_factor": None,
            "k_from": 2,
            "k_to": 300,
            "path_loss": [2.0, 3.0, 4.0, 5.0],
            "antennas": "omni,flat_top",
            "directivity_db": 5.1,
            "cochannel_cells": 1,
            "reuse_ratio": 4.6,
            "cochannel_load": None,
            "output": None,
        },
    )
    _require(settings, "spreading_factor")
    labels = _parse_antennas(settings["antennas"])
    lines = ["antenna,path_loss_exponent,k,ber"]
    for label in labels:
        d = _antenna_directivity(label, settings["directivity_db"])
        for exponent in sorted(set(settings["path_loss"])):
            cfg = SystemConfig(
                spreading_factor=settings["spreading_factor"],
                directivity=d,
                path_loss_exponent=exponent,
                cochannel_cells=settings["cochannel_cells"],
                reuse_distance_ratio=settings["reuse_ratio"],
                cochannel_load=settings["cochannel_load"],
            )
            curve = sweep_curve(cfg, settings["k_from"], settings["k_to"], label=label)
            lines.extend(
                f"{label},{_fmt(exponent)},{k},{_fmt(ber)}" for k, ber in curve.points
            )
    _emit(lines, settings["output"])
    return 0


def cmd_capacity(args: argparse.Namespace) -> int:
    settings = _merge(
        args,
        {
            "target_ber": None,
            "spreading_factor": None,
            "antennas": "omni",
            "directivity_db": 5.1,
            "cochannel_cells": 0,
            "path_loss": [4.0],
            "reuse_ratio": 4.6,
            "cochannel_load": None,
            "output": None,
        },
    )
    _require(settings, "target_ber", "spreading_factor")
    labels = _parse_antennas(settings["antennas"])
    if len(labels) != 1:
        raise _UsageError("capacity works on exactly one antenna")
    if len(settings["path_loss"]) != 1:
        raise _UsageError("capacity takes a single --path-loss value")
    label = labels[0]
    cfg = SystemConfig(
        spreading_factor=settings["spreading_factor"],
        directivity=_antenna_directivity(label, settings["directivity_db"]),
        path_loss_exponent=settings["path_loss"][0],
        cochannel_cells=settings["cochannel_cells"],
        reuse_distance_ratio=settings["reuse_ratio"],
        cochannel_load=settings["cochannel_load"],
    )
    k_max = capacity(settings["target_ber"], cfg)
    lines = [
        "antenna,target_ber,k_max",
        f"{label},{_fmt(settings['target_ber'])},{k_max}",
    ]
    _emit(lines, settings["output"])
    return 0


def cmd_montecarlo(args: argparse.Namespace) -> int:
    settings = _merge(
        args,
        {
            "spreading_factor": None,
            "users": None,
            "bits": None,
            "seed": None,
            "directivity_db": None,
            "mode": "mean_field",
            "output": None,
        },
    )
    _require(settings, "spreading_factor", "users", "bits", "seed")
    d = 1.0 if settings["directivity_db"] is None else db_to_linear(settings["directivity_db"])
    cfg = MonteCarloConfig(
        spreading_factor=settings["spreading_factor"],
        users=settings["users"],
        bits=settings["bits"],
        seed=settings["seed"],
        directivity=d,
        mode=settings["mode"],
    )
    report = simulate_cdma(cfg) if d == 1.0 else simulate_sdma(cfg)
    lines = [
        "mode,N,k,D,bits,errors,ber,stderr,seed",
        ",".join(
            [
                cfg.mode,
                str(cfg.spreading_factor),
                str(cfg.users),
                _fmt(cfg.directivity),
                str(report.bits_simulated),
                str(report.bit_errors),
                _fmt(report.empirical_ber),
                _fmt(report.standard_error),
                str(report.seed),
            ]
        ),
    ]
    _emit(lines, settings["output"])
    return 0


def cmd_beampattern(args: argparse.Namespace) -> int:
    settings = _merge(
        args,
        {
            "flat_top": None,
            "directivity_db": 5.1,
            "pointing_deg": 0.0,
            "elements": None,
            "spacing": 0.5,
            "desired_deg": None,
            "null_deg": [],
            "output": None,
        },
    )
    if settings["flat_top"]:
        pattern = flat_top_pattern(
            db_to_linear(settings["directivity_db"]),
            math.radians(settings["pointing_deg"]),
        )
    else:
        _require(settings, "elements", "desired_deg")
        geom = ArrayGeometry.uniform(settings["elements"], settings["spacing"])
        weights = null_steer(
            geom,
            math.radians(settings["desired_deg"]),
            [math.radians(angle) for angle in settings["null_deg"]],
        )
        pattern = array_pattern(weights, geom).normalized()
    lines = ["theta_degrees,gain_linear"]
    step = 360.0 / pattern.gains.size
    lines.extend(
        f"{i * step:.1f},{_fmt(gain)}" for i, gain in enumerate(pattern.gains)
    )
    _emit(lines, settings["output"])
    return 0


def _read_doa_file(path: str) -> dict[int, float]:
    doas: dict[int, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split(",")
            if len(parts) != 2:
                raise _UsageError(f"{path}:{lineno}: expected 'user_id,theta_degrees'")
            try:
                user_id = int(parts[0])
                theta_deg = float(parts[1])
            except ValueError:
                raise _UsageError(
                    f"{path}:{lineno}: expected 'user_id,theta_degrees', got {stripped!r}"
                ) from None
            if user_id in doas:
                raise _UsageError(f"{path}:{lineno}: duplicate user_id {user_id}")
            doas[user_id] = math.radians(theta_deg)
    return doas


def cmd_assign(args: argparse.Namespace) -> int:
    settings = _merge(
        args,
        {"doa_file": None, "theta_min_deg": None, "output": None},
    )
    _require(settings, "doa_file", "theta_min_deg")
    doas = _read_doa_file(settings["doa_file"])
    assignment = assign_channels(doas, math.radians(settings["theta_min_deg"]))
    lines = ["user_id,physical_channel,spatial_channel"]
    lines.extend(
        f"{user_id},{physical},{spatial}" for user_id, physical, spatial in assignment.entries
    )
    lines.append(f"# physical_channels={assignment.physical_channel_count()}")
    _emit(lines, settings["output"])
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key = value settings file")
    sub.add_argument("--output", help="output CSV path (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdma-capacity",
        description="BER and capacity analysis for SDMA/CDMA cells, as CSV",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    curves = commands.add_parser("curves", help="BER-vs-users curve families")
    _add_common(curves)
    curves.add_argument("--spreading-factor", type=int)
    curves.add_argument("--k-from", type=int)
    curves.add_argument("--k-to", type=int)
    curves.add_argument("--path-loss", type=float, action="append",
                        help="path-loss exponent, repeatable (default 2,3,4,5)")
    curves.add_argument("--antennas", help="comma list of omni,flat_top (default both)")
    curves.add_argument("--directivity-db", type=float)
    curves.add_argument("--cochannel-cells", type=int)
    curves.add_argument("--reuse-ratio", type=float)
    curves.add_argument("--cochannel-load", type=int)
    curves.set_defaults(func=cmd_curves)

    cap = commands.add_parser("capacity", help="largest user count meeting a target BER")
    _add_common(cap)
    cap.add_argument("--target-ber", type=float)
    cap.add_argument("--spreading-factor", type=int)
    cap.add_argument("--antennas", help="one of omni, flat_top (default omni)")
    cap.add_argument("--directivity-db", type=float)
    cap.add_argument("--cochannel-cells", type=int)
    cap.add_argument("--path-loss", type=float, action="append")
    cap.add_argument("--reuse-ratio", type=float)
    cap.add_argument("--cochannel-load", type=int)
    cap.set_defaults(func=cmd_capacity)

    mc = commands.add_parser("montecarlo", help="chip-level link simulation")
    _add_common(mc)
    mc.add_argument("--spreading-factor", type=int)
    mc.add_argument("--users", type=int)
    mc.add_argument("--bits", type=int)
    mc.add_argument("--seed", type=int)
    mc.add_argument("--directivity-db", type=float)
    mc.add_argument("--mode", choices=["mean_field", "geometric"])
    mc.set_defaults(func=cmd_montecarlo)

    beam = commands.add_parser("beampattern", help="export a beam pattern as CSV")
    _add_common(beam)
    beam.add_argument("--flat-top", action="store_const", const=True,
                      help="ideal flat-top beam instead of a weighted array")
    beam.add_argument("--directivity-db", type=float)
    beam.add_argument("--pointing-deg", type=float)
    beam.add_argument("--elements", type=int)
    beam.add_argument("--spacing", type=float, help="element spacing in wavelengths")
    beam.add_argument("--desired-deg", type=float)
    beam.add_argument("--null-deg", type=float, action="append",
                      help="null direction in degrees, repeatable")
    beam.set_defaults(func=cmd_beampattern)

    assign = commands.add_parser("assign", help="DOA-based spatial channel assignment")
    _add_common(assign)
    assign.add_argument("--doa-file", help="one 'user_id,theta_degrees' per line")
    assign.add_argument("--theta-min-deg", type=float)
    assign.set_defaults(func=cmd_assign)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UnboundedCapacityError, CapacityCapError, InfeasibleNullsError, DegenerateGeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INFEASIBLE_ERROR
    except (_UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def entry() -> None:
    sys.exit(main())
