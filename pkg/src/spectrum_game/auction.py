"""Stage I: spiteful first-price sealed-bid competition for block A.

Both operators bid only on block A; the loser leases block B at its
reserve price ``c_B`` and pays the carrier-aggregation investment ``c_BS``.
Ties go to operator i.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .model import MNO, ConfigurationError, DomainError, MarketParams
from .pricing import revenues


@dataclass(frozen=True)
class AuctionParams:
    c_A: float = 2.0
    c_B: float = 1.0
    c_BS: float = 1.0
    alpha_i: float = 0.6
    alpha_j: float = 0.0

    def __post_init__(self):
        for name in ("c_A", "c_B", "c_BS"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be finite and non-negative, got {v}")
        for name in ("alpha_i", "alpha_j"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise DomainError(f"{name} must lie in [0, 1], got {v}")

    def alpha(self, who: MNO) -> float:
        return self.alpha_i if who is MNO.I else self.alpha_j


class BlockValues(NamedTuple):
    r_A: float
    r_B: float
    pi_B: float


@functools.lru_cache(maxsize=256)
def block_values(market: MarketParams, auction: AuctionParams) -> BlockValues:
    """Aggregate revenue of each block and the profit of leasing B."""
    rep = revenues(market)
    return BlockValues(rep.r_A, rep.r_B, rep.r_B - auction.c_B - auction.c_BS)


def spiteful_objective(market: MarketParams, auction: AuctionParams, who: MNO, b_i, b_j):
    r_A, _, pi_B = block_values(market, auction)
    own, other = (b_i, b_j) if who is MNO.I else (b_j, b_i)
    wins = b_i >= b_j if who is MNO.I else b_j > b_i
    alpha = auction.alpha(who)
    out = np.where(wins, r_A - own, (1 - alpha) * pi_B - alpha * (r_A - other))
    return float(out) if out.ndim == 0 else out


def _check_support(market: MarketParams, auction: AuctionParams) -> BlockValues:
    vals = block_values(market, auction)
    if auction.c_A >= vals.r_A:
        raise ConfigurationError(
            f"reserve price c_A={auction.c_A} is not below the value of block A r_A={vals.r_A:.6g}"
        )
    return vals


def expected_objective(market: MarketParams, auction: AuctionParams, b, who: MNO = MNO.I):
    """Expected objective against a rival bid uniform on [c_A, r_A], times (r_A - c_A)."""
    r_A, _, pi_B = _check_support(market, auction)
    c_A, alpha = auction.c_A, auction.alpha(who)
    b = np.asarray(b, dtype=float)
    win = (b - c_A) * (r_A - b)
    lose = (1 - alpha) * pi_B * (r_A - b) - alpha * (r_A * (r_A - b) - (r_A**2 - b**2) / 2)
    out = win + lose
    return float(out) if out.ndim == 0 else out


def optimal_bid(market: MarketParams, auction: AuctionParams, who: MNO = MNO.I) -> float:
    r_A, _, pi_B = _check_support(market, auction)
    alpha = auction.alpha(who)
    return ((1 + alpha) * r_A - (1 - alpha) * pi_B + auction.c_A) / (2 + alpha)


def optimal_bids(market: MarketParams, auction: AuctionParams) -> tuple[float, float]:
    return optimal_bid(market, auction, MNO.I), optimal_bid(market, auction, MNO.J)


@dataclass(frozen=True)
class AuctionOutcome:
    b_i: float
    b_j: float
    winner: MNO
    pi_i: float
    pi_j: float
    rho_gain: float | None  # None when the loser's profit is zero
    # winner profit as printed in the closed-form profit expression; diagnostic only
    printed_winner_profit: float


def settle(market: MarketParams, auction: AuctionParams) -> AuctionOutcome:
    r_A, _, pi_B = _check_support(market, auction)
    b_i, b_j = optimal_bids(market, auction)
    winner = MNO.I if b_i >= b_j else MNO.J
    win_bid = b_i if winner is MNO.I else b_j
    alpha = auction.alpha(winner)
    won = r_A - win_bid
    pi_i, pi_j = (won, pi_B) if winner is MNO.I else (pi_B, won)
    rho = None if pi_j == 0 else pi_i / pi_j
    printed = (r_A - (1 - alpha) * pi_B + auction.c_A) / (2 + alpha)
    return AuctionOutcome(b_i, b_j, winner, pi_i, pi_j, rho, printed)


def profit_gain(market: MarketParams, auction: AuctionParams) -> float:
    """pi_i / pi_j with operator i taking block A at its optimal bid."""
    r_A, _, pi_B = _check_support(market, auction)
    if pi_B == 0:
        raise ConfigurationError("profit of block B is zero; profit gain undefined")
    return (r_A - optimal_bid(market, auction, MNO.I)) / pi_B


def crossover_alpha_closed_form(market: MarketParams, auction: AuctionParams) -> float:
    r_A, _, pi_B = _check_support(market, auction)
    return (r_A - auction.c_A - pi_B) / (2 * pi_B)


_ROOT_ATOL = 1e-12


def _bisect(fn, lo: float, hi: float) -> float | None:
    f_lo, f_hi = fn(lo), fn(hi)
    # a root sitting on an endpoint only shows up to rounding
    if abs(f_lo) <= _ROOT_ATOL:
        return lo
    if abs(f_hi) <= _ROOT_ATOL:
        return hi
    if f_lo * f_hi > 0:
        return None
    return optimize.bisect(fn, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)


def crossover_alpha(market: MarketParams, auction: AuctionParams) -> float | None:
    """Spite coefficient of i at which both profits coincide; None without a bracket on [0, 1]."""
    _check_support(market, auction)
    return _bisect(lambda a: profit_gain(market, replace(auction, alpha_i=a)) - 1, 0.0, 1.0)


def fair_reserve(market: MarketParams, auction: AuctionParams, alpha_fixed: float) -> float | None:
    """Reserve price of block A in [c_B, r_A) that equalises profits at spite alpha_fixed."""
    r_A = block_values(market, auction).r_A
    base = replace(auction, alpha_i=alpha_fixed)
    if base.c_B >= r_A:
        return None

    def gap(c_A: float) -> float:
        return profit_gain(market, replace(base, c_A=c_A)) - 1

    # the top end is excluded from the admissible range, so nudge below it
    hi = r_A * (1 - 1e-12)
    return _bisect(gap, base.c_B, hi)
