"""High-precision reference values frozen into the C++ unit tests.

Independent of the C++ code: plain mpmath arithmetic, full binary tree
expansion for the lattice (no recombination), closed form for Black-Scholes.
Run: python3 tests/oracles/reference_values.py
"""
from itertools import product

import mpmath as mp

mp.mp.dps = 40


def phi(x):
    return mp.ncdf(x)


def bs_call(s, k, r, t, sigma):
    s, k, r, t, sigma = map(mp.mpf, (s, k, r, t, sigma))
    d1 = (mp.log(s / k) + (r + sigma**2 / 2) * t) / (sigma * mp.sqrt(t))
    d2 = d1 - sigma * mp.sqrt(t)
    return s * phi(d1) - k * mp.exp(-r * t) * phi(d2)


def lattice_full_tree(s, k, t, r, sigma, n):
    """Sum over all 2^n paths; each path weighted by the product of its
    branch probabilities and discounted once at the end."""
    s, k, t, r, sigma = map(mp.mpf, (s, k, t, r, sigma))
    dt = t / n
    pu = mp.mpf(1) / 2 + r * mp.sqrt(dt) / (2 * sigma)
    pd = mp.mpf(1) / 2 - r * mp.sqrt(dt) / (2 * sigma)
    total = mp.mpf(0)
    for moves in product((1, -1), repeat=n):
        ups = sum(1 for m in moves if m == 1)
        st = s * mp.exp(sigma * mp.sqrt(dt) * sum(moves))
        total += pu**ups * pd**(n - ups) * max(mp.mpf(0), st - k)
    return mp.exp(-r * t) * total


def lattice_binomial_sum(s, k, t, r, sigma, n):
    s, k, t, r, sigma = map(mp.mpf, (s, k, t, r, sigma))
    dt = t / n
    pu = mp.mpf(1) / 2 + r * mp.sqrt(dt) / (2 * sigma)
    pd = 1 - pu
    total = mp.mpf(0)
    for i in range(n + 1):
        st = s * mp.exp((2 * i - n) * sigma * mp.sqrt(dt))
        total += mp.binomial(n, i) * pu**i * pd**(n - i) * max(mp.mpf(0), st - k)
    return mp.exp(-r * t) * total


def show(label, value):
    print(f"{label:55s} {mp.nstr(value, 20)}")


if __name__ == "__main__":
    show("exp(0.2)", mp.exp(mp.mpf("0.2")))
    show("single step S=K=100 T=1 r=0 sigma=0.2", lattice_full_tree(100, 100, 1, 0, "0.2", 1))
    show("lattice n=10 S=K=100 T=1 r=0 sigma=0.2 (full tree)", lattice_full_tree(100, 100, 1, 0, "0.2", 10))
    show("lattice n=10 S=K=100 T=1 r=0 sigma=0.2 (binomial sum)", lattice_binomial_sum(100, 100, 1, 0, "0.2", 10))
    show("lattice n=10 S=110 K=100 T=0.5 r=0.03 sigma=0.25", lattice_full_tree(110, 100, "0.5", "0.03", "0.25", 10))
    show("lattice n=5 S=90 K=100 T=2 r=0.05 sigma=0.3", lattice_full_tree(90, 100, 2, "0.05", "0.3", 5))
    for n in (10, 50, 100, 500):
        show(f"lattice n={n} ATM (binomial sum)", lattice_binomial_sum(100, 100, 1, 0, "0.2", n))
    show("BS S=K=100 r=0 T=1 sigma=0.2", bs_call(100, 100, 0, 1, "0.2"))
    show("BS S=K=100 r=0.05 T=1 sigma=0.2", bs_call(100, 100, "0.05", 1, "0.2"))
    show("BS S=120 K=100 r=0.02 T=0.5 sigma=0.35", bs_call(120, 100, "0.02", "0.5", "0.35"))
    show("Phi(1.959963984540054)", phi(mp.mpf("1.959963984540054")))
    show("Phi^-1(0.975)", mp.sqrt(2) * mp.erfinv(mp.mpf("0.95")))
    for x in ("-7.5", "-3", "-1", "0.1", "0.5", "2.5", "6"):
        show(f"Phi({x})", phi(mp.mpf(x)))
    # Analytic vega at S=K=100, r=0, T=1, sigma=0.2 : S*phi(d1)*sqrt(T)
    d1 = mp.mpf("0.1")
    show("vega S=K=100 r=0 T=1 sigma=0.2", 100 * mp.npdf(d1))
