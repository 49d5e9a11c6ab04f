"""Independent reference computations used only by the tests."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

TRUNCATION = 200


def _bd_generator_rhs(lam: float, mu: float, size: int):
    k = np.arange(size, dtype=float)
    birth = lam / (1.0 + k)
    birth[-1] = 0.0  # reflecting truncation
    death = mu * k

    def rhs(p):
        dp = -(birth + death) * p
        dp[1:] += birth[:-1] * p[:-1]
        dp[:-1] += death[1:] * p[1:]
        return dp

    return rhs


def rk4_transient(lam: float, mu: float, times, h: float = 1e-3, size: int = TRUNCATION):
    """Forward equations of the birth-death chain, classic RK4 from a point mass at 0.

    Returns an array with one row per requested time.
    """
    rhs = _bd_generator_rhs(lam, mu, size)
    p = np.zeros(size)
    p[0] = 1.0
    t = 0.0
    out = []
    for target in sorted(times):
        while t < target - 1e-15:
            step = min(h, target - t)
            k1 = rhs(p)
            k2 = rhs(p + 0.5 * step * k1)
            k3 = rhs(p + 0.5 * step * k2)
            k4 = rhs(p + step * k3)
            p = p + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            t += step
        out.append(p.copy())
    return np.array(out)


def urn_law_exact(n: int) -> list[Fraction]:
    """Law of Z_n by forward enumeration with exact rationals."""
    dist = {0: Fraction(1)}
    for _ in range(n):
        nxt: dict[int, Fraction] = {}
        for k, p in dist.items():
            up = Fraction(1, k + 1)
            nxt[k + 1] = nxt.get(k + 1, 0) + p * up
            nxt[k] = nxt.get(k, 0) + p * (1 - up)
        dist = nxt
    return [dist.get(k, Fraction(0)) for k in range(n + 1)]


def urn_mean_exact(n: int) -> Fraction:
    return sum(k * p for k, p in enumerate(urn_law_exact(n)))


def bessel_i0_direct(rho: float, terms: int = 400) -> float:
    """sum_k rho^k / (k!)^2 summed term by term."""
    total, term = 0.0, 1.0
    for k in range(terms):
        total += term
        term *= rho / ((k + 1) ** 2)
    return total


def unconditional_brute_force(n: int, k: int, rho: float, l_cap: int) -> float:
    """Double sum over l and over the conditional support, no shared helpers."""
    num = 0.0
    for l in range(n + k + 1, l_cap + 1):
        poisson = math.exp(-rho + l * math.log(rho) - math.lgamma(l + 1))
        z = sum(rho**j / math.factorial(j) ** 2 for j in range(l - n))
        num += poisson * (rho**k / math.factorial(k) ** 2) / z
    # summed upward: 1 - P(N <= n) cancels badly when n is far past rho
    p_alive = math.fsum(math.exp(-rho + l * math.log(rho) - math.lgamma(l + 1))
                        for l in range(n + 1, n + 400))
    return num / p_alive


def growth_graph_law(nodes: int):
    """Every mu = 0 graph on ``nodes`` nodes with its exact probability.

    Yields ``(probability, in_degrees)``; feasible up to about 6 nodes.
    """
    from itertools import product

    states = [(Fraction(1), (0,), (0,))]
    for j in range(1, nodes):
        nxt = []
        for p, out, inn in states:
            for mask in product((0, 1), repeat=j):
                q = p
                for i, hit in enumerate(mask):
                    accept = Fraction(1, 1 + out[i])
                    q *= accept if hit else 1 - accept
                if q:
                    nxt.append((q, tuple(o + h for o, h in zip(out, mask)) + (0,),
                                inn + (sum(mask),)))
        states = nxt
    return [(p, inn) for p, _, inn in states]
