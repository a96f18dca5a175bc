"""Family registry: build copula models from ``name:params`` spec strings."""

import csv
from typing import List, Optional, Sequence, Tuple

from .archimedean import (
    Generator,
    archimedean_copula,
    make_clayton,
    make_frank,
    make_gumbel,
    make_w_generator,
)
from .core import CopulaModel, MarshallOlkinParams, make_m, make_marshall_olkin, make_pi, make_w
from .extreme_value import (
    PickandsFunction,
    ev_copula,
    make_galambos,
    make_gumbel_pickands,
    make_piecewise_linear_pickands,
)

FAMILY_NAMES = (
    "pi",
    "m",
    "w",
    "clayton",
    "gumbel",
    "frank",
    "galambos",
    "gumbel-ev",
    "marshall-olkin",
    "pickands-pwl",
)


def parse_spec(spec: str) -> Tuple[str, List[float]]:
    parts = spec.split(":")
    name = parts[0].strip().lower()
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown copula family '{name}' (known: {', '.join(FAMILY_NAMES)})")
    try:
        params = [float(p) for p in parts[1:]]
    except ValueError:
        raise ValueError(f"non-numeric parameter in copula spec '{spec}'")
    return name, params


def read_knots_csv(path: str) -> List[Tuple[float, float]]:
    """Read piecewise-linear Pickands knots from a CSV with header ``x,a``."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["x", "a"]:
            raise ValueError("knots CSV must have header 'x,a'")
        return [(float(row["x"]), float(row["a"])) for row in reader]


def make_generator_for(name: str, params: Sequence[float]) -> Generator:
    if name == "clayton":
        return make_clayton(*params)
    if name == "gumbel":
        return make_gumbel(*params)
    if name == "frank":
        return make_frank(*params)
    if name == "w":
        return make_w_generator()
    raise ValueError(f"family '{name}' is not Archimedean")


def make_pickands_for(
    name: str, params: Sequence[float], knots=None
) -> PickandsFunction:
    if name == "galambos":
        return make_galambos(*params)
    if name == "gumbel-ev":
        return make_gumbel_pickands(*params)
    if name == "pickands-pwl":
        if knots is None:
            raise ValueError("pickands-pwl requires a knots table (--knots CSV)")
        return make_piecewise_linear_pickands(knots)
    raise ValueError(f"family '{name}' is not Extreme-Value")


def make_copula(spec: str, knots: Optional[Sequence[Tuple[float, float]]] = None) -> CopulaModel:
    """Build the copula model described by ``spec``, e.g. ``clayton:2``."""
    name, params = parse_spec(spec)
    try:
        if name == "pi":
            return make_pi()
        if name == "m":
            return make_m()
        if name == "w":
            return make_w()
        if name == "marshall-olkin":
            if len(params) != 2:
                raise ValueError("marshall-olkin takes two parameters alpha:beta")
            return make_marshall_olkin(MarshallOlkinParams(*params))
        if name in ("clayton", "gumbel", "frank"):
            if len(params) != 1:
                raise ValueError(f"{name} takes exactly one parameter")
            return archimedean_copula(make_generator_for(name, params))
        if name in ("galambos", "gumbel-ev"):
            if len(params) != 1:
                raise ValueError(f"{name} takes exactly one parameter")
            return ev_copula(make_pickands_for(name, params))
        if name == "pickands-pwl":
            if params:
                raise ValueError("pickands-pwl takes its knots from --knots, not inline")
            return ev_copula(make_pickands_for(name, params, knots))
    except TypeError:
        raise ValueError(f"wrong parameter count in copula spec '{spec}'")
    raise ValueError(f"unknown copula family '{name}'")


def registered_examples() -> List[str]:
    """One representative spec per registered family (used by oracle sweeps)."""
    return [
        "pi",
        "m",
        "w",
        "clayton:2",
        "gumbel:3",
        "frank:5",
        "galambos:3",
        "gumbel-ev:2.5",
        "marshall-olkin:0.5:0.7",
    ]
