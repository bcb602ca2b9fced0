"""Recompute the frozen reference numbers used by the test suite.

Deliberately self-contained: only numpy and scipy, no import of
spectrum_game.  Revenues come from adaptive quadrature of price times share
written out from the user-level model, bids from a brute-force grid over the
expected objective integrated numerically, and the crossover from a root
find on the profit ratio.

    python scripts/reference_values.py
"""

import numpy as np
from scipy import integrate, optimize

U_O, LAM, T2 = 1.0, 0.01, 10.0
C_B, C_BS = 1.0, 1.0


def phase_revenues(eta, t1):
    a = eta * U_O

    def asym_prices(t):
        return np.exp(-LAM * t) + a / 3, np.exp(-LAM * t) - a / 3

    def asym_share_i(t):
        p_i, p_j = asym_prices(t)
        return 0.5 + np.exp(LAM * t) * (a + p_j - p_i) / 2

    x = a * np.exp(LAM * t1)
    q1_i = asym_share_i(t1)

    def sym_prices(t):
        return (9 + x) / (9 + 3 * x) * np.exp(-LAM * t), (9 - x) / (9 + 3 * x) * np.exp(-LAM * t)

    def sym_share_i(t):
        p_i, p_j = sym_prices(t)
        return q1_i * (1 - (p_i - p_j) * np.exp(LAM * t))

    q = dict(epsabs=1e-13, epsrel=1e-13)
    r_ia = integrate.quad(lambda t: asym_prices(t)[0] * asym_share_i(t), 0, t1, **q)[0]
    r_ja = integrate.quad(lambda t: asym_prices(t)[1] * (1 - asym_share_i(t)), 0, t1, **q)[0]
    r_is = integrate.quad(lambda t: sym_prices(t)[0] * sym_share_i(t), t1, T2, **q)[0]
    r_js = integrate.quad(lambda t: sym_prices(t)[1] * (1 - sym_share_i(t)), t1, T2, **q)[0]
    return r_ia, r_ja, r_is, r_js


def expected_objective(b, alpha, c_A, r_A, pi_B):
    win = integrate.quad(lambda bj: r_A - b, c_A, b)[0]
    lose = integrate.quad(lambda bj: (1 - alpha) * pi_B - alpha * (r_A - bj), b, r_A)[0]
    return win + lose


def grid_bid(alpha, c_A, r_A, pi_B, step=1e-4):
    coarse = np.arange(c_A, r_A, 1e-2)
    best = coarse[np.argmax([expected_objective(b, alpha, c_A, r_A, pi_B) for b in coarse])]
    fine = np.arange(max(c_A, best - 0.02), min(r_A, best + 0.02), step / 10)
    vals = [expected_objective(b, alpha, c_A, r_A, pi_B) for b in fine]
    return fine[int(np.argmax(vals))]


def main():
    for eta, t1 in ((0.6, 1.0), (0.3, 1.0), (0.6, 1.1), (0.6, 2.0)):
        r = phase_revenues(eta, t1)
        r_A, r_B = r[0] + r[2], r[1] + r[3]
        print(f"eta={eta} t1={t1}: phases " + " ".join(f"{v:.9f}" for v in r)
              + f"  r_A={r_A:.9f} r_B={r_B:.9f} r_gain={r_A / r_B:.9f}")

    r = phase_revenues(0.6, 1.0)
    r_A, r_B = r[0] + r[2], r[1] + r[3]
    pi_B = r_B - C_B - C_BS
    for alpha, c_A in ((0.6, 2.0), (0.8, 2.0), (0.0, 2.0), (0.6, 1.0)):
        b = grid_bid(alpha, c_A, r_A, pi_B)
        print(f"grid bid alpha={alpha} c_A={c_A}: {b:.6f}  profit={r_A - b:.6f}  rho={(r_A - b) / pi_B:.6f}")

    for c_A in (2.0, 1.0):
        def gap(alpha):
            b = optimize.minimize_scalar(
                lambda bb: -expected_objective(bb, alpha, c_A, r_A, pi_B),
                bounds=(c_A, r_A), method="bounded", options=dict(xatol=1e-12),
            ).x
            return (r_A - b) / pi_B - 1
        print(f"crossover alpha c_A={c_A}: {optimize.brentq(gap, 0, 1, xtol=1e-12):.9f}")


if __name__ == "__main__":
    main()
