import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spectrum_game import pricing
from spectrum_game.model import DomainError, MarketParams, Phase
from spectrum_game.oracles import quad_revenue

from .conftest import REF


def test_eq_prices_asym(fig3b, flat):
    p = pricing.eq_prices_asym(fig3b, 0.0)
    assert (p.p_i, p.p_j) == pytest.approx((1.2, 0.8))
    p = pricing.eq_prices_asym(fig3b, 1.0)
    assert (p.p_i, p.p_j) == pytest.approx((1.190050, 0.790050), abs=1e-6)
    for t in (0.0, 0.3, 1.0):
        p = pricing.eq_prices_asym(flat, t)
        assert p.p_i == p.p_j == pytest.approx(math.exp(-0.01 * t))
    with pytest.raises(DomainError):
        pricing.eq_prices_asym(fig3b, 1.5)


def test_eq_prices_sym(fig3a, fig3b, flat):
    assert fig3b.lead == pytest.approx(0.606030, abs=1e-6)
    path = pricing.price_path(fig3b, Phase.SYMMETRIC)
    p = path(1.0)
    assert (p.p_i, p.p_j) == pytest.approx((0.879125, 0.768199), abs=1e-6)

    path = pricing.price_path(fig3a, Phase.SYMMETRIC)
    assert fig3a.lead == pytest.approx(0.303015, abs=1e-6)
    assert (path.coeff_i, path.coeff_j) == pytest.approx((0.938841, 0.877681), abs=1e-6)

    p = pricing.eq_prices_sym(flat, 4.0)
    assert p.p_i == p.p_j == pytest.approx(math.exp(-0.04))
    with pytest.raises(DomainError):
        pricing.eq_prices_sym(fig3b, 1.0)


def test_eq_shares(fig3b, flat):
    q = pricing.eq_shares(fig3b, 1.0)
    assert (q.q_i, q.q_j) == pytest.approx((0.601005, 0.398995), abs=1e-6)
    q = pricing.eq_shares(fig3b, 5.0)
    assert (q.q_i, q.q_j) == pytest.approx((0.533668, 0.466332), abs=1e-6)
    for t in (0.0, 1.0, 7.0):
        assert pricing.eq_shares(flat, t).q_i == 0.5
    with pytest.raises(DomainError):
        pricing.eq_shares(fig3b, 11.0)


def test_falling_price_levels(fig3a, fig3b, flat):
    assert pricing.falling_price_levels(fig3b) == pytest.approx((0.310925, 0.021851), abs=1e-6)
    assert pricing.falling_price_levels(fig3a) == pytest.approx((0.160551, 0.021101), abs=1e-6)
    assert pricing.falling_price_levels(flat) == (0.0, 0.0)


@pytest.mark.parametrize("eta", [0.05, 0.3, 0.6, 0.9])
@pytest.mark.parametrize("t1", [0.5, 1.0, 2.0])
def test_falling_price_levels_match_path_jump(eta, t1):
    m = MarketParams(eta=eta, t1=t1)
    left = pricing.price_path(m, Phase.ASYMMETRIC)(t1)
    right = pricing.price_path(m, Phase.SYMMETRIC)(t1)
    phi_i, phi_j = pricing.falling_price_levels(m)
    assert abs(phi_i - (left.p_i - right.p_i)) < 1e-12
    assert abs(phi_j - (left.p_j - right.p_j)) < 1e-12
    assert phi_i > 0 and phi_j > 0


def test_revenues_reference(fig3b):
    rep = pricing.revenues(fig3b)
    for key in ("r_i_asym", "r_j_asym", "r_i_sym", "r_j_sym", "r_A", "r_B", "r_gain"):
        assert getattr(rep, key) == pytest.approx(REF[key], abs=1e-8), key
    assert rep.r_A == rep.r_i_asym + rep.r_i_sym
    assert rep.r_B == rep.r_j_asym + rep.r_j_sym


def test_revenues_spec_values_to_1e4(fig3b):
    rep = pricing.revenues(fig3b)
    quoted = dict(r_i_asym=0.717610, r_j_asym=0.317610, r_i_sym=4.038020, r_j_sym=3.083280,
                  r_A=4.755630, r_B=3.400890, r_gain=1.398350)
    for key, value in quoted.items():
        assert getattr(rep, key) == pytest.approx(value, abs=1e-4), key


def test_revenues_without_asymmetry(flat):
    rep = pricing.revenues(flat)
    half = (1 - math.exp(-0.01 * 10)) / (2 * 0.01)
    assert rep.r_A == pytest.approx(half) and rep.r_B == pytest.approx(half)
    assert rep.r_gain == pytest.approx(1.0)


def test_revenues_zero_discount_rate():
    m = MarketParams(eta=0.6, lam=0.0)
    rep = pricing.revenues(m)
    assert rep.r_i_asym == pytest.approx(quad_revenue(Phase.ASYMMETRIC, m)[0], rel=1e-9)
    assert rep.r_j_sym == pytest.approx(quad_revenue(Phase.SYMMETRIC, m)[1], rel=1e-9)


def test_revenue_gain_grows_with_deployment_time():
    one = pricing.revenues(MarketParams(eta=0.6, t1=1.0))
    two = pricing.revenues(MarketParams(eta=0.6, t1=2.0))
    assert two.r_gain > one.r_gain
    assert two.r_gain == pytest.approx(REF["r_gain_t1_2"], abs=1e-8)


@pytest.mark.parametrize("eta", np.linspace(0.05, 0.6, 12))
@pytest.mark.parametrize("t1", [1.0, 2.0])
def test_revenues_match_quadrature(eta, t1):
    m = MarketParams(eta=float(eta), t1=t1)
    rep = pricing.revenues(m)
    for phase, closed in ((Phase.ASYMMETRIC, (rep.r_i_asym, rep.r_j_asym)), (Phase.SYMMETRIC, (rep.r_i_sym, rep.r_j_sym))):
        for num, ref in zip(quad_revenue(phase, m), closed):
            assert num == pytest.approx(ref, rel=1e-6)


def test_revenue_gain_monotone_on_swept_grid():
    etas = np.linspace(0.05, 0.6, 12)
    t1s = np.linspace(0.5, 2.0, 7)
    gains = np.array([[pricing.revenues(MarketParams(eta=float(e), t1=float(t))).r_gain for t in t1s] for e in etas])
    assert np.all(np.diff(gains, axis=0) >= 0)
    assert np.all(np.diff(gains, axis=1) >= 0)


def test_revenue_slope_signs_example(fig3b):
    up = pricing.revenues(MarketParams(eta=0.6, t1=1.1))
    assert up.r_A == pytest.approx(REF["r_A_t1_1.1"], abs=1e-8)
    assert up.r_B == pytest.approx(REF["r_B_t1_1.1"], abs=1e-8)
    d_a, d_b = pricing.lemma2_signs(fig3b)
    assert d_a > 0 > d_b


def test_revenue_slope_signs_flat_and_eta_03(flat, fig3a):
    d_a, d_b = pricing.lemma2_signs(flat)
    assert abs(d_a) < 1e-8 and abs(d_b) < 1e-8
    d_a, d_b = pricing.lemma2_signs(fig3a, h=1e-4)
    assert d_a > 0 > d_b


def test_revenue_slope_signs_rejects_bad_step(fig3b):
    with pytest.raises(DomainError):
        pricing.lemma2_signs(fig3b, h=1.0)
    with pytest.raises(DomainError):
        pricing.lemma2_signs(fig3b, h=-1e-3)


@given(eta=st.floats(0.01, 0.9), t1=st.floats(0.2, 5.0), frac=st.floats(0.0, 1.0))
def test_price_ordering_and_foc(eta, t1, frac):
    m = MarketParams(eta=eta, t1=t1)
    for t in (frac * t1, t1 + 1e-9 + frac * (m.t2 - t1 - 1e-9)):
        p = pricing.eq_prices(m, t)
        assert p.p_i > p.p_j > 0
        foc = pricing.first_order_conditions(m, t, p)
        assert max(abs(v) for v in foc) < 1e-9


@given(eta=st.floats(0.0, 0.9), t1=st.floats(0.2, 5.0))
def test_revenue_report_identities(eta, t1):
    rep = pricing.revenues(MarketParams(eta=eta, t1=t1))
    assert rep.r_gain >= 1 - 1e-15
    if eta > 1e-6:
        assert rep.r_gain > 1
