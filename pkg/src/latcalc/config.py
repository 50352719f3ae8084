"""Flat key=value config files and rational-valued CLI argument parsing.

Config files carry one ``key = value`` per line with ``#`` comments; unknown
keys are rejected with the offending key named.  Elements are comma-separated
rationals; boxes are semicolon-separated "lo,hi" pairs.
"""

from __future__ import annotations

from fractions import Fraction
from .models import (
    AlgebraModel, LocallyConstantModel, PointwiseModel, PolySubalgebraDemo,
    TwistedR2,
)

__all__ = [
    "ConfigError", "parse_kv_text", "parse_kv_file", "model_from_mapping",
    "model_from_file", "parse_rational", "parse_vector", "parse_box_spec",
    "parse_points_file",
]


class ConfigError(ValueError):
    pass


def parse_kv_text(text: str, source: str = "<config>") -> dict[str, str]:
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in mapping:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        mapping[key] = value
    return mapping


def parse_kv_file(path: str) -> dict[str, str]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_kv_text(fh.read(), source=path)


_MODEL_KEYS = {
    "pointwise": {"kind", "dimension"},
    "twisted-r2": {"kind"},
    "locally-constant": {"kind", "dimension", "neighborhood"},
    "poly-demo": {"kind"},
}


def model_from_mapping(mapping: dict[str, str], source: str = "<config>") -> AlgebraModel:
    kind = mapping.get("kind")
    if kind is None:
        raise ConfigError(f"{source}: missing 'kind'")
    if kind not in _MODEL_KEYS:
        raise ConfigError(
            f"{source}: unknown kind {kind!r} (expected one of {sorted(_MODEL_KEYS)})"
        )
    allowed = _MODEL_KEYS[kind]
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"{source}: unknown keys for {kind}: {sorted(unknown)}")

    def nat(key: str) -> int:
        if key not in mapping:
            raise ConfigError(f"{source}: missing {key!r} for kind {kind}")
        try:
            value = int(mapping[key])
        except ValueError:
            raise ConfigError(f"{source}: {key} must be an integer") from None
        if value < 1:
            raise ConfigError(f"{source}: {key} must be >= 1")
        return value

    if kind == "pointwise":
        return PointwiseModel(nat("dimension"))
    if kind == "twisted-r2":
        return TwistedR2()
    if kind == "locally-constant":
        return LocallyConstantModel(nat("dimension"), prefix=nat("neighborhood"))
    return PolySubalgebraDemo()


def model_from_file(path: str) -> AlgebraModel:
    return model_from_mapping(parse_kv_file(path), source=path)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational: {text!r}") from None


def parse_vector(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if not parts or parts == [""]:
        raise ConfigError("empty element")
    return tuple(parse_rational(p) for p in parts)


def parse_box_spec(text: str) -> list[tuple[Fraction, Fraction]]:
    bounds = []
    for part in text.split(";"):
        pair = parse_vector(part)
        if len(pair) != 2:
            raise ConfigError(f"box coordinate must be 'lo,hi', got {part!r}")
        bounds.append((pair[0], pair[1]))
    return bounds


def parse_points_file(path: str) -> list[tuple[Fraction, ...]]:
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                points.append(parse_vector(line))
    if not points:
        raise ConfigError(f"{path}: no points found")
    return points
