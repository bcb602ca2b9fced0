"""Run every oracle against the closed forms for one scenario."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import oracles, pricing
from .auction import crossover_alpha, fair_reserve, optimal_bid, block_values
from .model import MNO, ConfigurationError, MarketParams, Phase, PricePair
from .oracles import GridSpec, McConfig
from .scenario import Scenario

NASH_TOL = 1e-4
FOC_TOL = 1e-9
QUAD_RTOL = 1e-6
DROP_TOL = 1e-12
INVERSE_TOL = 1e-6


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return f"{status}  {self.name:<28} residual={self.residual:.3e}  tol={self.tolerance:.1e}{extra}"


def _within(name: str, residual: float, tol: float, note: str = "") -> Check:
    return Check(name, residual, tol, bool(residual <= tol), note)


def sample_times(market: MarketParams) -> list[float]:
    """Start, mid and end of the asymmetric phase plus three symmetric-phase points."""
    t1, t2 = market.t1, market.t2
    span = t2 - t1
    return [0.0, t1 / 2, t1, t1 + span / 9, t1 + 4 * span / 9, t2]


def _closed_prices(market: MarketParams, t: float) -> PricePair:
    return pricing.eq_prices(market, t)


def nash_checks(market: MarketParams, grid: GridSpec) -> list[Check]:
    out = []
    for t in sample_times(market):
        closed = _closed_prices(market, t)
        found = oracles.nash_by_iteration(market.phase(t), market, t, grid)
        err = max(abs(found.p_i - closed.p_i), abs(found.p_j - closed.p_j))
        out.append(_within(f"nash t={t:g}", err, max(NASH_TOL, grid.step)))
        foc = max(abs(v) for v in pricing.first_order_conditions(market, t, closed))
        out.append(_within(f"foc t={t:g}", foc, FOC_TOL))
    return out


def quad_checks(market: MarketParams) -> list[Check]:
    rep = pricing.revenues(market)
    out = []
    for phase, closed in ((Phase.ASYMMETRIC, (rep.r_i_asym, rep.r_j_asym)), (Phase.SYMMETRIC, (rep.r_i_sym, rep.r_j_sym))):
        numeric = oracles.quad_revenue(phase, market)
        err = max(abs(n - c) / abs(c) for n, c in zip(numeric, closed))
        out.append(_within(f"quadrature {phase.value}", err, QUAD_RTOL))
    return out


def drop_check(market: MarketParams) -> Check:
    phi_i, phi_j = pricing.falling_price_levels(market)
    left = pricing.price_path(market, Phase.ASYMMETRIC)(market.t1)
    right = pricing.price_path(market, Phase.SYMMETRIC)(market.t1)
    err = max(abs(phi_i - (left.p_i - right.p_i)), abs(phi_j - (left.p_j - right.p_j)))
    return _within("phase-boundary drop", err, DROP_TOL)


def mc_checks(market: MarketParams, mc: McConfig) -> list[Check]:
    out = []
    t1_prices = pricing.eq_prices_asym(market, market.t1)
    for t in sample_times(market):
        expected = pricing.eq_shares(market, t).q_i
        found = oracles.mc_shares(market.phase(t), market, t, _closed_prices(market, t), mc, t1_prices)
        sigma = math.sqrt(expected * (1 - expected) / mc.n_users)
        out.append(_within(f"monte carlo t={t:g}", abs(found.q_i - expected), 3 * sigma))
    return out


def bid_checks(scenario: Scenario) -> list[Check]:
    market, auction = scenario.market, scenario.auction
    if auction.c_A >= block_values(market, auction).r_A:
        return [Check("bid grid search", 0.0, 0.0, True, "skipped: c_A >= r_A")]
    step = 1e-4
    out = []
    for who in (MNO.I, MNO.J):
        found = oracles.grid_optimal_bid(market, auction, GridSpec(step=step), who)
        err = abs(found - optimal_bid(market, auction, who))
        out.append(_within(f"bid grid search {who.value}", err, step))
    return out


def comparative_statics_checks(market: MarketParams, grid: GridSpec) -> list[Check]:
    if market.eta == 0:
        return [Check("comparative statics", 0.0, 0.0, True, "skipped: eta = 0 has no asymmetry")]
    d_a, d_b = pricing.lemma2_signs(market)
    out = [
        Check("r_A rises with t1", d_a, 0.0, d_a > 0, "residual is the slope"),
        Check("r_B falls with t1", d_b, 0.0, d_b < 0, "residual is the slope"),
    ]
    gaps = [_closed_prices(market, t) for t in sample_times(market)]
    worst = min(p.p_i - p.p_j for p in gaps)
    out.append(Check("price ordering p_i > p_j", worst, 0.0, worst > 0, "residual is the smallest gap"))
    t = sample_times(market)[4]
    hi = 2 * math.exp(-market.lam * t) + market.advantage
    found = oracles.nash_by_iteration(Phase.SYMMETRIC, market, t, grid, start=PricePair(0.25 * hi, 0.75 * hi))
    gap = found.p_i - found.p_j
    out.append(Check("start p_i < p_j flips", gap, 0.0, gap > 0, "residual is p_i - p_j at the fixed point"))
    return out


def inverse_checks(scenario: Scenario) -> list[Check]:
    market, auction = scenario.market, scenario.auction
    try:
        alpha = crossover_alpha(market, auction)
    except ConfigurationError as exc:
        return [Check("crossover/fair reserve", 0.0, 0.0, True, f"skipped: {exc}")]
    if alpha is None:
        return [Check("crossover/fair reserve", 0.0, 0.0, True, "skipped: no crossover on [0, 1]")]
    c_A = fair_reserve(market, auction, alpha)
    if c_A is None:
        return [Check("crossover/fair reserve", math.inf, INVERSE_TOL, False, "fair reserve not found")]
    back = crossover_alpha(market, replace(auction, c_A=c_A))
    err = max(abs(c_A - auction.c_A), abs(back - alpha))
    return [_within("crossover/fair reserve", err, INVERSE_TOL)]


def run_validation(scenario: Scenario, mc: McConfig = McConfig(), grid: GridSpec = GridSpec()) -> list[Check]:
    market = scenario.market
    checks = []
    checks += nash_checks(market, grid)
    checks += quad_checks(market)
    checks.append(drop_check(market))
    checks += mc_checks(market, mc)
    checks += bid_checks(scenario)
    checks += comparative_statics_checks(market, grid)
    checks += inverse_checks(scenario)
    return checks
