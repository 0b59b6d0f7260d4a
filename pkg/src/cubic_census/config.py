"""Run configuration: defaults < TOML file < environment < command-line flags.

Module Information:
    - Filename: config.py
    - Module: config
    - Location: src/cubic_census/

Environment variables mirror the flags with the ``CUBIC_CENSUS_`` prefix, e.g.
``CUBIC_CENSUS_Q=7`` or ``CUBIC_CENSUS_CONDITIONS="T=(111);T+1=(3)"``.
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, fields, replace
import os
from pathlib import Path
import re
import tomllib
from typing import Any

from .errors import DomainError
from .ffpoly import PolyFq, check_q, get_field, is_irreducible
from .forms import SplittingType
from .utils_logger import get_logger

LOGGER = get_logger(__name__)

ENV_PREFIX = "CUBIC_CENSUS_"
TOML_TABLE = "cubic_census"

_TERM = re.compile(r"^(\d*)\*?(T(?:\^(\d+))?)?$")

#####################################
# Parsing helpers
#####################################


def parse_poly(q: int, text: str) -> PolyFq:
    """Read "T^2 + 3T + 1" (or "[1, 3, 1]", constant term first) as an element of F_q[T]."""
    fq = get_field(q)
    text = text.strip()
    if text.startswith("["):
        return PolyFq.from_ints(fq, (int(x) for x in text.strip("[]").split(",") if x.strip()))
    total = PolyFq.zero(fq)
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text.replace(" ", "")):
        match = _TERM.match(body)
        if not match or not body:
            raise DomainError(f"cannot read polynomial term {body!r} in {text!r}")
        coeff_text, mono, power = match.groups()
        coeff = int(coeff_text) if coeff_text else 1
        degree = 0 if not mono else int(power or 1)
        term = PolyFq.monomial(fq, fq.from_int(coeff), degree)
        total = total - term if sign == "-" else total + term
    return total


def parse_condition(q: int, text: str) -> tuple[PolyFq, SplittingType]:
    """Read "P=S", e.g. "T+1=(111)"."""
    prime_text, sep, split_text = text.partition("=")
    if not sep:
        raise DomainError(f"condition {text!r} must look like PRIME=TYPE")
    prime = parse_poly(q, prime_text)
    if not prime.is_monic or not is_irreducible(prime):
        raise DomainError(f"{prime_text!r} is not a monic prime")
    return prime, SplittingType.parse(split_text)


#####################################
# RunConfig
#####################################


@dataclass(frozen=True)
class RunConfig:
    """All knobs of one CLI run."""

    q: int = 5
    M: int | None = None
    ell: int | None = None
    sigma: str | None = None
    conditions: tuple[str, ...] = ()
    deg_a: int | None = None
    deg_b: int | None = None
    margin: int = 1
    budget: int = 10**6
    supp: float = 1.0
    tol: float | None = None
    fourier_tol: float = 1e-10
    zeta_tol: float = 1e-7
    onelevel_tol: float = 1e-6
    quadrature_tol: float = 1e-4
    seed: int = 0
    threads: int = 1
    out: Path = Path("outputs")

    def __post_init__(self) -> None:
        check_q(self.q)
        if self.M is not None and self.M % 2:
            raise DomainError(f"M must be even, got {self.M}")
        if self.threads < 1:
            raise DomainError(f"threads must be at least 1, got {self.threads}")
        if self.supp <= 0:
            raise DomainError(f"supp must be positive, got {self.supp}")
        if self.margin < 0:
            raise DomainError(f"margin must be nonnegative, got {self.margin}")

    def parsed_conditions(self) -> list[tuple[PolyFq, SplittingType]]:
        return [parse_condition(self.q, c) for c in self.conditions]

    def to_json(self) -> dict[str, Any]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["out"] = str(self.out)
        out["conditions"] = list(self.conditions)
        return out


def _coerce(name: str, value: Any) -> Any:
    """Turn a TOML/env/flag value into the type RunConfig expects for ``name``."""
    if value is None:
        return None
    if name in ("q", "M", "ell", "deg_a", "deg_b", "margin", "budget", "seed", "threads"):
        return int(value)
    if name in ("supp", "tol", "fourier_tol", "zeta_tol", "onelevel_tol", "quadrature_tol"):
        return float(value)
    if name == "out":
        return Path(value)
    if name == "conditions":
        if isinstance(value, str):
            return tuple(part.strip() for part in value.split(";") if part.strip())
        return tuple(str(v) for v in value)
    return str(value)


def _field_names() -> set[str]:
    return {f.name for f in fields(RunConfig)}


def read_toml(path: Path) -> dict[str, Any]:
    with path.open("rb") as fh:
        data = tomllib.load(fh)
    table = data.get(TOML_TABLE, data)
    unknown = set(table) - _field_names()
    if unknown:
        raise DomainError(f"unknown configuration keys in {path}: {sorted(unknown)}")
    return dict(table)


def read_env(env: Mapping[str, str]) -> dict[str, Any]:
    names = {name.upper(): name for name in _field_names()}
    return {names[key[len(ENV_PREFIX):]]: value for key, value in env.items() if key.startswith(ENV_PREFIX) and key[len(ENV_PREFIX):] in names}


def load_config(
    path: Path | None = None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> RunConfig:
    """Merge defaults, the TOML file, CUBIC_CENSUS_* variables and flags, later sources winning."""
    merged: dict[str, Any] = {}
    if path is not None:
        merged.update(read_toml(path))
    merged.update(read_env(os.environ if env is None else env))
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    config = RunConfig(**{k: _coerce(k, v) for k, v in merged.items()})
    if config.tol is not None:
        config = replace(config, fourier_tol=config.tol, zeta_tol=config.tol, onelevel_tol=config.tol)
    LOGGER.debug(f"Configuration: {config.to_json()}")
    return config


#####################################
# List all exports
#####################################

__all__ = ["ENV_PREFIX", "RunConfig", "parse_poly", "parse_condition", "read_toml", "read_env", "load_config"]
