"""Independent numerical checks for the closed forms.

Each oracle reaches the answer by a different route than the formula it
checks: grid best responses over the raw share functions, adaptive
quadrature of price times share, a seeded population applying the
individual switching rule, and grid search over the expected bidding
objective.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import model
from .auction import AuctionParams, block_values, expected_objective
from .model import MNO, ConfigurationError, DomainError, MarketParams, Phase, PricePair, SharePair
from .pricing import price_path


class OracleFailure(RuntimeError):
    """An oracle did not reach an answer (e.g. best-response iteration did not settle)."""


@dataclass(frozen=True)
class GridSpec:
    """Search grid; ``lo``/``hi`` of None pick the default range for the problem."""

    lo: float | None = None
    hi: float | None = None
    step: float = 1e-5
    max_iters: int = 10_000
    tol: float = 1e-9

    def __post_init__(self):
        if self.step <= 0 or self.tol <= 0 or self.max_iters < 1:
            raise ConfigurationError(f"invalid grid settings: {self}")
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ConfigurationError(f"grid needs lo < hi, got [{self.lo}, {self.hi}]")

    def points(self, lo: float, hi: float) -> np.ndarray:
        lo = self.lo if self.lo is not None else lo
        hi = self.hi if self.hi is not None else hi
        n = int(math.floor((hi - lo) / self.step + 1e-9)) + 1
        if hi < lo or n < 1:
            raise ConfigurationError(f"empty grid on [{lo}, {hi}] with step {self.step}")
        return lo + self.step * np.arange(n)


@dataclass(frozen=True)
class McConfig:
    n_users: int = 1_000_000
    seed: int = 20140101

    def __post_init__(self):
        if self.n_users < 1:
            raise ConfigurationError("n_users must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be an unsigned 64-bit integer")


def _price_grid(market: MarketParams, t: float, grid: GridSpec) -> np.ndarray:
    return grid.points(0.0, 2 * math.exp(-market.lam * t) + market.advantage)


def _check_phase(phase: Phase, market: MarketParams, t: float) -> None:
    if phase is Phase.ASYMMETRIC:
        market.check_asymmetric(t)
    else:
        market.check_symmetric(t)


def _revenue_on_grid(phase, market, t, who, own, opponent_price, shares_at_t1):
    prices = PricePair(own, opponent_price) if who is MNO.I else PricePair(opponent_price, own)
    if phase is Phase.ASYMMETRIC:
        q = model.shares_asym(market, t, prices)
    else:
        q = model.shares_sym(market, t, prices, shares_at_t1)
    return own * q.share(who)


def _best_index(phase, market, t, opponent_price, who, points, shares_at_t1) -> int:
    return int(np.argmax(_revenue_on_grid(phase, market, t, who, points, opponent_price, shares_at_t1)))


def best_response(
    phase: Phase,
    market: MarketParams,
    t: float,
    opponent_price: float,
    who: MNO,
    grid: GridSpec = GridSpec(),
    shares_at_t1: SharePair | None = None,
) -> float:
    """Revenue-maximising own price on the grid against a fixed rival price."""
    _check_phase(phase, market, t)
    if phase is Phase.SYMMETRIC and shares_at_t1 is None:
        shares_at_t1 = locked_in_shares(market, grid)
    points = _price_grid(market, t, grid)
    return float(points[_best_index(phase, market, t, opponent_price, who, points, shares_at_t1)])


@functools.lru_cache(maxsize=64)
def locked_in_shares(market: MarketParams, grid: GridSpec = GridSpec()) -> SharePair:
    """Shares at t1 produced by the iterated asymmetric-phase equilibrium."""
    prices = nash_by_iteration(Phase.ASYMMETRIC, market, market.t1, grid)
    return model.shares_asym(market, market.t1, prices)


def nash_by_iteration(
    phase: Phase,
    market: MarketParams,
    t: float,
    grid: GridSpec = GridSpec(),
    start: PricePair | None = None,
    shares_at_t1: SharePair | None = None,
) -> PricePair:
    """Alternate grid best responses until the price pair stops moving."""
    _check_phase(phase, market, t)
    if phase is Phase.SYMMETRIC and shares_at_t1 is None:
        shares_at_t1 = locked_in_shares(market, grid)
    points = _price_grid(market, t, grid)
    if start is None:
        mid = points[len(points) // 2]
        start = PricePair(mid, mid)

    p_i, p_j = float(start.p_i), float(start.p_j)
    seen = set()
    for _ in range(grid.max_iters):
        k_i = _best_index(phase, market, t, p_j, MNO.I, points, shares_at_t1)
        k_j = _best_index(phase, market, t, points[k_i], MNO.J, points, shares_at_t1)
        new_i, new_j = float(points[k_i]), float(points[k_j])
        move = max(abs(new_i - p_i), abs(new_j - p_j))
        p_i, p_j = new_i, new_j
        # a revisited grid state means the iteration is cycling at grid resolution
        if move <= grid.tol or (k_i, k_j) in seen:
            return PricePair(p_i, p_j)
        seen.add((k_i, k_j))
    raise OracleFailure(f"best-response iteration did not settle in {grid.max_iters} rounds at t={t}")


_CHUNK = 1 << 20


def _uniforms(mc: McConfig, n_streams: int) -> list[np.ndarray]:
    """``n_streams`` independent uniform vectors of length n_users, chunked deterministically."""
    n_chunks = -(-mc.n_users // _CHUNK)
    children = np.random.SeedSequence(mc.seed).spawn(n_chunks)
    out = [np.empty(mc.n_users) for _ in range(n_streams)]
    for c, seq in enumerate(children):
        rng = np.random.Generator(np.random.PCG64(seq))
        lo, hi = c * _CHUNK, min((c + 1) * _CHUNK, mc.n_users)
        for arr in out:
            arr[lo:hi] = rng.random(hi - lo)
    return out


def _churn(market: MarketParams, t: float, prices: PricePair, in_i: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Apply the individual switching rule at time t; returns new membership of i."""
    util_i, util_j = model.utilities(market, t)
    cost = u * math.exp(-market.lam * t)
    net_i, net_j = util_i - prices.p_i, util_j - prices.p_j
    to_i = ~in_i & (net_j <= net_i - cost)
    to_j = in_i & (net_i <= net_j - cost)
    return (in_i & ~to_j) | to_i


def mc_shares(
    phase: Phase,
    market: MarketParams,
    t: float,
    prices: PricePair,
    mc: McConfig = McConfig(),
    t1_prices: PricePair | None = None,
) -> SharePair:
    """Empirical shares of a simulated population.

    Users start split exactly half and half.  For the symmetric
    phase the population is first churned once at t1 under ``t1_prices``;
    switching costs are then redrawn at t for the second decision.
    """
    _check_phase(phase, market, t)
    u_first, u_second = _uniforms(mc, 2)
    in_i = np.arange(mc.n_users) % 2 == 0
    if phase is Phase.ASYMMETRIC:
        in_i = _churn(market, t, prices, in_i, u_first)
    else:
        if t1_prices is None:
            raise ConfigurationError("symmetric-phase simulation needs the prices in force at t1")
        in_i = _churn(market, market.t1, t1_prices, in_i, u_first)
        in_i = _churn(market, t, prices, in_i, u_second)
    q_i = float(np.count_nonzero(in_i)) / mc.n_users
    return SharePair(q_i, 1 - q_i)


def quad_revenue(phase: Phase, market: MarketParams) -> tuple[float, float]:
    """Integrate equilibrium price times share over one phase."""
    path = price_path(market, phase)
    if phase is Phase.ASYMMETRIC:
        lo, hi = 0.0, market.t1

        def q(t, p):
            return model.shares_asym(market, t, p)
    else:
        lo, hi = market.t1, market.t2
        locked = model.shares_asym(market, market.t1, price_path(market, Phase.ASYMMETRIC)(market.t1))

        def q(t, p):
            return model.shares_sym(market, t, p, locked)

    def rate(t: float, who: MNO) -> float:
        p = path(t)
        return p.price(who) * q(t, p).share(who)

    opts = dict(epsabs=1e-10, epsrel=1e-12, limit=200)
    r_i = integrate.quad(rate, lo, hi, args=(MNO.I,), **opts)[0]
    r_j = integrate.quad(rate, lo, hi, args=(MNO.J,), **opts)[0]
    return r_i, r_j


def grid_optimal_bid(
    market: MarketParams, auction: AuctionParams, grid: GridSpec | None = None, who: MNO = MNO.I
) -> float:
    grid = grid or GridSpec(step=1e-4)
    r_A = block_values(market, auction).r_A
    bids = grid.points(auction.c_A, r_A)
    return float(bids[np.argmax(expected_objective(market, auction, bids, who))])


def finite_diff(fn, at: float, h: float) -> float:
    """Central difference; ``fn`` raises DomainError for arguments outside its region."""
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    return (fn(at + h) - fn(at - h)) / (2 * h)
