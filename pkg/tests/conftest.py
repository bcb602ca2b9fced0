import pytest

from spectrum_game import AuctionParams, MarketParams

# Frozen from scripts/reference_values.py (quadrature / grid search, no package code).
REF = {
    "r_i_asym": 0.717608647,
    "r_j_asym": 0.317608647,
    "r_i_sym": 4.038012476,
    "r_j_sym": 3.083291496,
    "r_A": 4.755621122,
    "r_B": 3.400900143,
    "r_gain": 1.398341887,
    "r_A_t1_1.1": 4.780060139,
    "r_B_t1_1.1": 3.395640839,
    "r_gain_t1_2": 1.493136193,
    "r_gain_eta_0.3": 1.179565529,
    "alpha_star_cA2": 0.483518039,
    "alpha_star_cA1": 0.840431415,
}


@pytest.fixture
def fig3a():
    return MarketParams(u_o=1.0, eta=0.3, lam=0.01, t1=1.0, t2=10.0)


@pytest.fixture
def fig3b():
    return MarketParams(u_o=1.0, eta=0.6, lam=0.01, t1=1.0, t2=10.0)


@pytest.fixture
def flat():
    return MarketParams(u_o=1.0, eta=0.0, lam=0.01, t1=1.0, t2=10.0)


@pytest.fixture
def fig6_auction():
    return AuctionParams(c_A=2.0, c_B=1.0, c_BS=1.0, alpha_i=0.6, alpha_j=0.0)


# one status line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[1:])):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
