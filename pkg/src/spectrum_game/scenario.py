"""Scenario configuration: figure presets, key-value files and overrides.

A scenario file holds one ``key = value`` pair per line; ``#`` starts a
comment.  Recognised keys:

    u_o, eta, lambda, t1, t2            market parameters
    c_A, c_B, c_BS, alpha_i, alpha_j    auction parameters
    sweep, sweep_lo, sweep_hi, sweep_steps
    time_grid

``sweep`` names the swept variable (eta, t1, alpha_i or c_A).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .auction import AuctionParams
from .model import ConfigurationError, MarketParams

SWEEP_AXES = ("eta", "t1", "alpha_i", "c_A")

_MARKET_KEYS = {"u_o": "u_o", "eta": "eta", "lambda": "lam", "lam": "lam", "t1": "t1", "t2": "t2"}
_AUCTION_KEYS = {f.name: f.name for f in fields(AuctionParams)}


@dataclass(frozen=True)
class Sweep:
    var: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.var not in SWEEP_AXES:
            raise ConfigurationError(f"unknown sweep variable {self.var!r}; choose from {', '.join(SWEEP_AXES)}")
        if self.steps < 2:
            raise ConfigurationError("a sweep needs at least 2 steps")
        if not self.lo < self.hi:
            raise ConfigurationError(f"sweep needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.var in ("eta", "alpha_i") and not (0 <= self.lo and self.hi <= 1):
            raise ConfigurationError(f"{self.var} sweep must stay inside [0, 1]")
        if self.var in ("t1", "c_A") and self.lo < 0:
            raise ConfigurationError(f"{self.var} sweep must be non-negative")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class Scenario:
    market: MarketParams = field(default_factory=lambda: MarketParams(eta=0.6))
    auction: AuctionParams = field(default_factory=AuctionParams)
    sweep: Sweep | None = None
    time_grid: int = 1000

    def __post_init__(self):
        if self.time_grid < 2:
            raise ConfigurationError("time_grid needs at least 2 samples")
        if self.sweep is not None and self.sweep.var == "t1" and self.sweep.hi >= self.market.t2:
            raise ConfigurationError("t1 sweep must stay below t2")


PRESETS: dict[str, tuple[str, Scenario]] = {
    "fig3a": ("equilibrium prices over time, eta=0.3", Scenario(MarketParams(eta=0.3))),
    "fig3b": ("equilibrium prices over time, eta=0.6", Scenario(MarketParams(eta=0.6))),
    "fig4a": ("market shares over time, eta=0.3", Scenario(MarketParams(eta=0.3))),
    "fig4b": ("market shares over time, eta=0.6", Scenario(MarketParams(eta=0.6))),
    "fig5": (
        "revenue gain against eta, t1=1 (set t1=2 for the second curve)",
        Scenario(MarketParams(eta=0.6), sweep=Sweep("eta", 0.05, 0.6, 12)),
    ),
    "fig6": (
        "profit gain against alpha_i, c_A=2 (set c_A=1 for the second curve)",
        Scenario(MarketParams(eta=0.6), AuctionParams(c_A=2.0), sweep=Sweep("alpha_i", 0.0, 1.0, 21)),
    ),
    "fig7": (
        "profit gain against t1, alpha_i=0.6 (set alpha_i=0.8 for the second curve)",
        Scenario(MarketParams(eta=0.6), AuctionParams(alpha_i=0.6), sweep=Sweep("t1", 0.5, 5.0, 19)),
    ),
}


def preset(name: str) -> Scenario:
    try:
        return PRESETS[name][1]
    except KeyError:
        raise ConfigurationError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def parse_pairs(lines) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {line!r}")
        out[key.strip()] = value.strip()
    return out


def read_scenario_file(path: str | Path) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_pairs(text.splitlines())


def _number(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigurationError(f"{key}: expected a number, got {value!r}") from None


def apply_overrides(base: Scenario, pairs: dict[str, str]) -> Scenario:
    """Return ``base`` with the given keys replaced; unknown keys are rejected."""
    market, auction = {}, {}
    sweep = None if base.sweep is None else dict(var=base.sweep.var, lo=base.sweep.lo, hi=base.sweep.hi, steps=base.sweep.steps)
    time_grid = base.time_grid
    for key, value in pairs.items():
        if key in _MARKET_KEYS:
            market[_MARKET_KEYS[key]] = _number(key, value)
        elif key in _AUCTION_KEYS:
            auction[key] = _number(key, value)
        elif key == "sweep":
            if value.lower() in ("", "none"):
                sweep = None
            else:
                sweep = dict(sweep or dict(lo=0.0, hi=1.0, steps=11), var=value)
        elif key in ("sweep_lo", "sweep_hi", "sweep_steps"):
            if sweep is None:
                raise ConfigurationError(f"{key} given without a sweep variable")
            sweep[key[len("sweep_"):]] = _number(key, value)
        elif key == "time_grid":
            time_grid = int(_number(key, value))
        else:
            raise ConfigurationError(f"unknown scenario key {key!r}")
    if sweep is not None:
        sweep = Sweep(sweep["var"], float(sweep["lo"]), float(sweep["hi"]), int(sweep["steps"]))
    return Scenario(
        market=replace(base.market, **market),
        auction=replace(base.auction, **auction),
        sweep=sweep,
        time_grid=time_grid,
    )
