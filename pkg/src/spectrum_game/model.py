"""Market primitives and user churn for the two-operator spectrum game.

Operator ``i`` holds the high-valued block and offers double-speed service
from t = 0; operator ``j`` matches it at the deployment time ``t1``.  Users
carry a switching cost drawn uniformly on ``[0, exp(-lam * t)]`` and start
split 50/50 between the two operators.

Every share function here works for arbitrary prices (not only equilibrium
ones) and accepts numpy arrays in the price fields so oracles can scan a
whole grid at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class DomainError(ValueError):
    """Argument outside the region where the model is defined."""


class ConfigurationError(ValueError):
    """Parameter combination that makes an operation meaningless."""


class Phase(enum.Enum):
    ASYMMETRIC = "asymmetric"
    SYMMETRIC = "symmetric"


class MNO(enum.Enum):
    I = "i"  # noqa: E741  leases block A
    J = "j"  # leases block B

    @property
    def other(self) -> MNO:
        return MNO.J if self is MNO.I else MNO.I


@dataclass(frozen=True)
class MarketParams:
    """Base utility, user sensitivity, cost discount rate and the two horizons."""

    u_o: float = 1.0
    eta: float = 0.6
    lam: float = 0.01
    t1: float = 1.0
    t2: float = 10.0

    def __post_init__(self):
        for name in ("u_o", "eta", "lam", "t1", "t2"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.u_o <= 0:
            raise DomainError(f"u_o must be positive, got {self.u_o}")
        if not 0 <= self.eta < 1:
            raise DomainError(f"eta must lie in [0, 1), got {self.eta}")
        if self.lam < 0:
            raise DomainError(f"lambda must be non-negative, got {self.lam}")
        if not 0 < self.t1 < self.t2:
            raise DomainError(f"need 0 < t1 < t2, got t1={self.t1}, t2={self.t2}")
        # tightest point of the asymmetric phase is t = t1
        if self.eta * self.u_o >= math.exp(-self.lam * self.t1):
            raise DomainError(
                f"eta*u_o = {self.eta * self.u_o:.6g} must stay below "
                f"exp(-lambda*t1) = {math.exp(-self.lam * self.t1):.6g}"
            )

    @property
    def advantage(self) -> float:
        """Utility premium eta * u_o of double-speed service."""
        return self.eta * self.u_o

    @property
    def lead(self) -> float:
        """eta * u_o * exp(lam * t1); fixes the whole symmetric phase."""
        return self.eta * self.u_o * math.exp(self.lam * self.t1)

    def phase(self, t: float) -> Phase:
        if not 0 <= t <= self.t2:
            raise DomainError(f"t={t} outside [0, {self.t2}]")
        return Phase.ASYMMETRIC if t <= self.t1 else Phase.SYMMETRIC

    def check_asymmetric(self, t: float) -> None:
        if not 0 <= t <= self.t1:
            raise DomainError(f"t={t} outside the asymmetric phase [0, {self.t1}]")

    def check_symmetric(self, t: float) -> None:
        if not self.t1 < t <= self.t2:
            raise DomainError(f"t={t} outside the symmetric phase ({self.t1}, {self.t2}]")


@dataclass(frozen=True)
class PricePair:
    p_i: float
    p_j: float

    def __post_init__(self):
        for p in (self.p_i, self.p_j):
            p = np.asarray(p)
            if not (np.all(np.isfinite(p)) and np.all(p >= 0)):
                raise DomainError(f"prices must be finite and non-negative: {self}")

    def price(self, who: MNO):
        return self.p_i if who is MNO.I else self.p_j


@dataclass(frozen=True)
class SharePair:
    q_i: float
    q_j: float

    def share(self, who: MNO):
        return self.q_i if who is MNO.I else self.q_j


INITIAL_SHARES = SharePair(0.5, 0.5)


class Switching(NamedTuple):
    """Net churn from j to i in the asymmetric phase (negative means i to j)."""

    mass: float
    raw: float
    saturated: bool


class Flow(NamedTuple):
    """Net churn in the symmetric phase; ``i_to_j`` is signed (negative means j to i)."""

    i_to_j: float
    raw: float
    saturated: bool

    @property
    def source(self) -> MNO | None:
        if self.i_to_j > 0:
            return MNO.I
        if self.i_to_j < 0:
            return MNO.J
        return None

    @property
    def mass(self) -> float:
        return abs(self.i_to_j)


def utilities(params: MarketParams, t: float) -> tuple[float, float]:
    boosted = (1 + params.eta) * params.u_o
    if params.phase(t) is Phase.ASYMMETRIC:
        return boosted, params.u_o
    return boosted, boosted


def switching_mass_asym(params: MarketParams, t: float, prices: PricePair) -> Switching:
    """Net mass moving from j to i.

    j's customers move when their switching cost is below the net utility
    gap; if i overprices by more than the service premium the same rule
    sends i's customers the other way.  Each base holds half the market, so
    the net flow saturates at +-1/2.
    """
    params.check_asymmetric(t)
    raw = math.exp(params.lam * t) * (params.advantage + prices.p_j - prices.p_i) / 2
    mass = np.clip(raw, -0.5, 0.5)
    if np.ndim(mass) == 0:
        mass = float(mass)
    return Switching(mass, raw, bool(np.any(mass != raw)))


def shares_asym(params: MarketParams, t: float, prices: PricePair) -> SharePair:
    q_i = 0.5 + switching_mass_asym(params, t, prices).mass
    return SharePair(q_i, 1 - q_i)


def switching_mass_sym(
    params: MarketParams, t: float, prices: PricePair, shares_at_t1: SharePair
) -> Flow:
    """Users leave whichever operator is dearer; only its locked-in base can move."""
    params.check_symmetric(t)
    growth = math.exp(params.lam * t)
    gap = prices.p_i - prices.p_j
    out_of_i = np.where(gap > 0, gap * shares_at_t1.q_i * growth, 0.0)
    out_of_j = np.where(gap < 0, -gap * shares_at_t1.q_j * growth, 0.0)
    raw = out_of_i - out_of_j
    signed = np.clip(out_of_i, 0.0, shares_at_t1.q_i) - np.clip(out_of_j, 0.0, shares_at_t1.q_j)
    if np.ndim(signed) == 0:
        signed, raw = float(signed), float(raw)
    return Flow(signed, raw, bool(np.any(signed != raw)))


def shares_sym(
    params: MarketParams, t: float, prices: PricePair, shares_at_t1: SharePair
) -> SharePair:
    flow = switching_mass_sym(params, t, prices, shares_at_t1).i_to_j
    q_i = shares_at_t1.q_i - flow
    return SharePair(q_i, 1 - q_i)


def shares(
    params: MarketParams, t: float, prices: PricePair, shares_at_t1: SharePair | None = None
) -> SharePair:
    """Dispatch on phase; the symmetric phase needs the shares locked in at t1."""
    if params.phase(t) is Phase.ASYMMETRIC:
        return shares_asym(params, t, prices)
    if shares_at_t1 is None:
        raise ConfigurationError("symmetric-phase shares need shares_at_t1")
    return shares_sym(params, t, prices, shares_at_t1)
