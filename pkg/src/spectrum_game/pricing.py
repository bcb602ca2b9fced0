"""Stage-II equilibrium prices, shares and revenues in closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import DomainError, MarketParams, Phase, PricePair, SharePair


def _decay_integral(lam: float, a: float, b: float) -> float:
    """Integral of exp(-lam*t) over [a, b]."""
    if lam == 0:
        return b - a
    return (math.exp(-lam * a) - math.exp(-lam * b)) / lam


def _growth_integral(lam: float, a: float, b: float) -> float:
    """Integral of exp(lam*t) over [a, b]."""
    if lam == 0:
        return b - a
    return (math.exp(lam * b) - math.exp(lam * a)) / lam


@dataclass(frozen=True)
class EquilibriumPricePath:
    """Equilibrium prices of one phase as a function of time.

    Asymmetric phase: ``exp(-lam t) + offset_i`` / ``exp(-lam t) + offset_j``.
    Symmetric phase: ``coeff_i * exp(-lam t)`` / ``coeff_j * exp(-lam t)``.
    Evaluation is allowed on the closure of the phase interval, so the
    symmetric path at t1 gives the right limit.
    """

    phase: Phase
    params: MarketParams

    @property
    def coeff_i(self) -> float:
        if self.phase is Phase.ASYMMETRIC:
            return 1.0
        x = self.params.lead
        return (9 + x) / (9 + 3 * x)

    @property
    def coeff_j(self) -> float:
        if self.phase is Phase.ASYMMETRIC:
            return 1.0
        x = self.params.lead
        return (9 - x) / (9 + 3 * x)

    @property
    def offset_i(self) -> float:
        return self.params.advantage / 3 if self.phase is Phase.ASYMMETRIC else 0.0

    @property
    def offset_j(self) -> float:
        return -self.params.advantage / 3 if self.phase is Phase.ASYMMETRIC else 0.0

    def __call__(self, t: float) -> PricePair:
        lo, hi = (0.0, self.params.t1) if self.phase is Phase.ASYMMETRIC else (self.params.t1, self.params.t2)
        if not lo <= t <= hi:
            raise DomainError(f"t={t} outside the closure [{lo}, {hi}] of the {self.phase.value} phase")
        decay = math.exp(-self.params.lam * t)
        return PricePair(self.coeff_i * decay + self.offset_i, self.coeff_j * decay + self.offset_j)


def price_path(params: MarketParams, phase: Phase) -> EquilibriumPricePath:
    return EquilibriumPricePath(phase, params)


def eq_prices_asym(params: MarketParams, t: float) -> PricePair:
    params.check_asymmetric(t)
    return price_path(params, Phase.ASYMMETRIC)(t)


def eq_prices_sym(params: MarketParams, t: float) -> PricePair:
    params.check_symmetric(t)
    return price_path(params, Phase.SYMMETRIC)(t)


def eq_prices(params: MarketParams, t: float) -> PricePair:
    if params.phase(t) is Phase.ASYMMETRIC:
        return eq_prices_asym(params, t)
    return eq_prices_sym(params, t)


def eq_shares(params: MarketParams, t: float) -> SharePair:
    if params.phase(t) is Phase.ASYMMETRIC:
        lead = params.advantage * math.exp(params.lam * t)
        return SharePair((3 + lead) / 6, (3 - lead) / 6)
    x = params.lead
    return SharePair(0.5 + x / 18, 0.5 - x / 18)


def first_order_conditions(params: MarketParams, t: float, prices: PricePair) -> tuple[float, float]:
    """Revenue derivatives d(p_i q_i)/dp_i and d(p_j q_j)/dp_j, valid on the interior branch."""
    growth = math.exp(params.lam * t)
    p_i, p_j = prices.p_i, prices.p_j
    if params.phase(t) is Phase.ASYMMETRIC:
        a = params.advantage
        return (
            (1 + (a + p_j - 2 * p_i) * growth) / 2,
            (1 - (a - p_i + 2 * p_j) * growth) / 2,
        )
    q1 = eq_shares(params, params.t1)
    return (
        q1.q_i * (1 - (2 * p_i - p_j) * growth),
        q1.q_j - (2 * p_j - p_i) * q1.q_i * growth,
    )


def falling_price_levels(params: MarketParams) -> tuple[float, float]:
    """Price drop of each operator when the symmetric phase starts."""
    a, x = params.advantage, params.lead
    return a * (5 + x) / (9 + 3 * x), a * (1 - x) / (9 + 3 * x)


@dataclass(frozen=True)
class RevenueReport:
    r_i_asym: float
    r_j_asym: float
    r_i_sym: float
    r_j_sym: float

    @property
    def r_A(self) -> float:
        return self.r_i_asym + self.r_i_sym

    @property
    def r_B(self) -> float:
        return self.r_j_asym + self.r_j_sym

    @property
    def r_gain(self) -> float:
        return self.r_A / self.r_B


def revenues(params: MarketParams) -> RevenueReport:
    a, x, lam, t1, t2 = params.advantage, params.lead, params.lam, params.t1, params.t2
    base = _decay_integral(lam, 0.0, t1) / 2 + a * a * _growth_integral(lam, 0.0, t1) / 18
    tail = _decay_integral(lam, t1, t2) / (54 * (3 + x))
    return RevenueReport(
        r_i_asym=base + a * t1 / 3,
        r_j_asym=base - a * t1 / 3,
        r_i_sym=(9 + x) ** 2 * tail,
        r_j_sym=(9 - x) ** 2 * tail,
    )


def lemma2_signs(params: MarketParams, h: float | None = None) -> tuple[float, float]:
    """Central-difference slopes of r_A and r_B with respect to the deployment time."""
    if h is None:
        h = 1e-4 * params.t1
    if h <= 0 or params.t1 - h <= 0 or params.t1 + h >= params.t2:
        raise DomainError(f"step h={h} pushes t1={params.t1} out of (0, {params.t2})")
    hi = revenues(replace(params, t1=params.t1 + h))
    lo = revenues(replace(params, t1=params.t1 - h))
    return (hi.r_A - lo.r_A) / (2 * h), (hi.r_B - lo.r_B) / (2 * h)
