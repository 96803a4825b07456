"""Scan configuration: schema validation and input parsing."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .algebraic import QuadraticReal, Real, RootOfInteger
from .bounds import BoundConstants, DEFAULT_CONSTANTS
from .errors import ConfigError
from .exactarith import DEFAULT_BUDGET, FactorizationBudget, PrimeSet

SCHEMA_VERSION = 1


def load_schema() -> dict:
    with resources.files("diolab.schema").joinpath(
            "scan_config.schema.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def validate_config(config: dict) -> dict:
    """Validate against the published schema; raises ConfigError with the path."""
    import jsonschema

    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "$" + "".join(f"[{p!r}]" for p in e.absolute_path)
        raise ConfigError(f"config invalid at {path}: {e.message}")
    return config


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return validate_config(config)


def parse_real(text: str) -> Real:
    """Parse a real-number spec.

    Accepted forms: "7", "3/2", "phi", "sqrt(2)", "root(2,3)" for 2**(1/3),
    and "quad(a,b,c,d)" for (a + b*sqrt(d))/c.
    """
    s = text.strip().lower().replace(" ", "")
    try:
        if s == "phi":
            return QuadraticReal.golden_ratio()
        if s.startswith("sqrt(") and s.endswith(")"):
            return QuadraticReal.sqrt_of(int(s[5:-1]))
        if s.startswith("root(") and s.endswith(")"):
            m, d = s[5:-1].split(",")
            return RootOfInteger.make(int(m), int(d))
        if s.startswith("quad(") and s.endswith(")"):
            a, b, c, d = (int(v) for v in s[5:-1].split(","))
            return QuadraticReal.make(a, b, c, d)
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse number {text!r}: {exc}") from exc


def parse_primes(spec) -> PrimeSet:
    """Prime set from "2,3,7" or a list of integers."""
    try:
        if isinstance(spec, str):
            values = [int(v) for v in spec.split(",") if v.strip()]
        else:
            values = [int(v) for v in spec]
        return PrimeSet(tuple(values))
    except ValueError as exc:
        raise ConfigError(f"bad prime set {spec!r}: {exc}") from exc


def parse_int_tuple(spec) -> tuple[int, ...]:
    try:
        if isinstance(spec, str):
            return tuple(int(v) for v in spec.split(",") if v.strip())
        return tuple(int(v) for v in spec)
    except ValueError as exc:
        raise ConfigError(f"bad integer list {spec!r}: {exc}") from exc


def budget_from_config(config: dict) -> FactorizationBudget:
    b = config.get("budgets", {})
    if not b:
        return DEFAULT_BUDGET
    return FactorizationBudget(
        trial_bound=int(b.get("trial_bound", DEFAULT_BUDGET.trial_bound)),
        rho_iterations=int(b.get("rho_iterations", DEFAULT_BUDGET.rho_iterations)))


def constants_from_config(config: dict) -> BoundConstants:
    c = config.get("constants", {})
    if not c:
        return DEFAULT_CONSTANTS
    return BoundConstants.from_dict(c)
