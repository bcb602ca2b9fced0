"""Backward-induction solver for a two-operator spectrum auction with user churn."""

from .auction import (
    AuctionOutcome,
    AuctionParams,
    crossover_alpha,
    expected_objective,
    fair_reserve,
    optimal_bids,
    settle,
    spiteful_objective,
)
from .model import (
    MNO,
    ConfigurationError,
    DomainError,
    MarketParams,
    Phase,
    PricePair,
    SharePair,
    shares_asym,
    shares_sym,
    switching_mass_asym,
    switching_mass_sym,
    utilities,
)
from .pricing import (
    EquilibriumPricePath,
    RevenueReport,
    eq_prices_asym,
    eq_prices_sym,
    eq_shares,
    falling_price_levels,
    lemma2_signs,
    revenues,
)

__version__ = "0.1.0"
