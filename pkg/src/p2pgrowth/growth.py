"""Zero-mortality regime (mu = 0): out-degree as a pure birth process.

A node's out-degree jumps k -> k+1 at rate lam / (1 + k). Observed at
arrival epochs it is the urn chain that moves up with probability 1/(1+k).
The module provides the transient law, the embedded-chain law (closed form
and recursion), and the asymptotic means and tail bounds built on them.

The closed forms are alternating sums whose terms grow like e^k while the
result shrinks, so double precision fails long before the terms overflow
(absolute error ~1e-1 at k = 30). With ``precision="auto"`` the evaluators
estimate the rounding error and redo the same sum in extended precision when
it is too large; ``precision="double"`` keeps the plain evaluation and only
rejects results outside [0, 1].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import CapacityError, DomainError, NumericError
from .model import DistVector

#: Largest embedded table accepted by :func:`embedded_pmf_table`.
MAX_TABLE_STEPS = 5000

_EPS = np.finfo(float).eps
# Rounding error per closed-form term is a handful of ulps of its magnitude.
_TERM_ULPS = 8.0
# Estimated absolute error above which "auto" leaves double precision.
_DOUBLE_ERR_LIMIT = 1e-13
_RANGE_SLACK = 1e-9


def _clamp_probability(raw: float, what: str) -> float:
    if not math.isfinite(raw) or raw < -_RANGE_SLACK or raw > 1 + _RANGE_SLACK:
        raise NumericError(f"{what} evaluated to {raw!r}; cancellation in the alternating sum")
    return min(1.0, max(0.0, raw))


def _check_precision(precision: str) -> None:
    if precision not in ("auto", "double"):
        raise DomainError(f"precision must be 'auto' or 'double', got {precision!r}")


# --- transient law ----------------------------------------------------------

def _pure_birth_log_terms(k: int, x: float) -> list[float]:
    lk = math.lgamma(k + 1)
    return [
        k * math.log(j) + math.lgamma(k + 2) - math.lgamma(j + 1) - math.lgamma(k + 2 - j)
        - lk - x / j
        for j in range(1, k + 2)
    ]


def pure_birth_pmf(k: int, t: float, lam: float, *, precision: str = "auto") -> float:
    """P(X(t) = k) for the pure birth process with rates lam/(1+k), X(0) = 0.

    Sum over j = 1..k+1 of (-1)^(k+1-j) j^k C(k+1, j) exp(-lam t / j), over k!.
    """
    _check_precision(precision)
    if k < 0 or t < 0 or lam <= 0:
        raise DomainError(f"need k >= 0, t >= 0, lam > 0; got k={k}, t={t}, lam={lam}")
    x = lam * t
    if k == 0:
        return math.exp(-x)

    log_terms = _pure_birth_log_terms(k, x)
    log_mag = max(log_terms)
    if log_mag < 700:
        terms = [(-1) ** (k + 1 - j) * math.exp(lt) for j, lt in enumerate(log_terms, 1)]
        raw = math.fsum(terms)
        err = _TERM_ULPS * _EPS * max(1.0, abs(log_mag)) * math.fsum(abs(v) for v in terms)
        if precision == "double" or err <= _DOUBLE_ERR_LIMIT:
            return _clamp_probability(raw, f"p({k}, t={t})")
    elif precision == "double":
        raise NumericError(f"terms of p({k}, t={t}) overflow double precision")

    dps = int(log_mag / math.log(10)) + 30
    with mpmath.workdps(dps):
        xm = mpmath.mpf(x)
        total = mpmath.fsum(
            (-1) ** (k + 1 - j) * mpmath.mpf(j) ** k * math.comb(k + 1, j) * mpmath.exp(-xm / j)
            for j in range(1, k + 2)
        )
        raw = float(total / mpmath.factorial(k))
    return _clamp_probability(raw, f"p({k}, t={t})")


def pure_birth_dist(t: float, lam: float, k_max: int) -> DistVector:
    """The transient law on 0..k_max; the remaining mass is the deficit."""
    probs = [pure_birth_pmf(k, t, lam) for k in range(k_max + 1)]
    return DistVector(0, np.array(probs), max(0.0, 1.0 - math.fsum(probs)))


# --- embedded (urn) chain ---------------------------------------------------

def embedded_pmf_closed(n: int, k: int, *, precision: str = "auto") -> float:
    """P(X_n = k) for the urn chain from the alternating-sum closed form (n >= k >= 1)."""
    _check_precision(precision)
    if not (n >= k >= 1):
        raise DomainError(f"closed form needs n >= k >= 1, got n={n}, k={k}")
    m = n - k
    log_terms = [
        k * math.log(i) + math.lgamma(k + 2) - math.lgamma(i + 2) - math.lgamma(k - i + 1)
        - math.lgamma(k + 1) + m * math.log(i / (i + 1))
        for i in range(1, k + 1)
    ]
    log_mag = max(log_terms)
    if log_mag < 700:
        terms = [(-1) ** (k - i) * math.exp(lt) for i, lt in enumerate(log_terms, 1)]
        raw = math.fsum(terms)
        err = _TERM_ULPS * _EPS * max(1.0, abs(log_mag)) * math.fsum(abs(v) for v in terms)
        if precision == "double" or err <= _DOUBLE_ERR_LIMIT:
            return _clamp_probability(raw, f"p_({n},{k})")
    elif precision == "double":
        raise NumericError(f"terms of p_({n},{k}) overflow double precision")

    # Every term is rational, so the fallback is exact.
    total = sum(
        (-1) ** (k - i) * math.comb(k + 1, i + 1) * Fraction(i) ** k * Fraction(i, i + 1) ** m
        for i in range(1, k + 1)
    )
    return _clamp_probability(float(total / math.factorial(k)), f"p_({n},{k})")


@dataclass(frozen=True)
class EmbeddedPmfTable:
    """Triangular table ``rows[n][k] = P(X_n = k)`` for 0 <= k <= n <= n_max."""

    n_max: int
    rows: tuple[np.ndarray, ...]

    def row(self, n: int) -> DistVector:
        return DistVector(0, self.rows[n])

    def mean(self, n: int) -> float:
        r = self.rows[n]
        return float(np.dot(np.arange(len(r)), r))

    def success_probability(self, draw: int) -> float:
        """P(success at urn draw ``draw``) = E[1 / (1 + X_{draw-1})]."""
        r = self.rows[draw - 1]
        return float(np.dot(r, 1.0 / (1.0 + np.arange(len(r)))))


def embedded_pmf_table(n_max: int) -> EmbeddedPmfTable:
    """Fill the embedded-chain table by the (all-positive) forward recursion."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if n_max > MAX_TABLE_STEPS:
        raise CapacityError(f"n_max={n_max} exceeds table limit {MAX_TABLE_STEPS}")
    rows = [np.array([1.0])]
    for n in range(n_max):
        prev = rows[-1]
        ks = np.arange(n + 1)
        up = 1.0 / (1.0 + ks)
        nxt = np.zeros(n + 2)
        nxt[:-1] += prev * (1.0 - up)
        nxt[1:] += prev * up
        rows.append(nxt)
    return EmbeddedPmfTable(n_max, tuple(rows))


# --- means and concentration ------------------------------------------------

def mean_out_degree_asymptotic(n: int) -> float:
    """(-1 + sqrt(1 + 8n)) / 2; approximates E(X_n), exact only for n <= 1."""
    if n < 0:
        raise DomainError("n must be >= 0")
    return (-1.0 + math.sqrt(1.0 + 8.0 * n)) / 2.0


def _check_side(side: str) -> None:
    if side not in ("upper", "lower"):
        raise DomainError(f"side must be 'upper' or 'lower', got {side!r}")


def out_degree_tail_bound(n: int, epsilon: float, side: str = "upper") -> float:
    """Bound on P(X_n >= (1+eps) m) (upper) or P(X_n <= (1-eps) m) (lower).

    Both sides share exp(-eps^2 m / 3) with m the asymptotic mean.
    """
    _check_side(side)
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if n < 1:
        raise DomainError("n must be >= 1")
    return math.exp(-(epsilon**2) * mean_out_degree_asymptotic(n) / 3.0)


def in_degree_mean_asymptotic(n: int) -> float:
    """(2 sqrt 2 / 3) sqrt n for the in-degree of the node arriving after n others."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return 2.0 * math.sqrt(2.0) / 3.0 * math.sqrt(n)


def arc_probability_asymptotic(i: int, n_plus_1: int) -> float:
    """Approximate P(arc i -> n+1) = 1 / sqrt(2(n - i) + 1) for 1 <= i <= n."""
    n = n_plus_1 - 1
    if not 1 <= i <= n:
        raise DomainError(f"need 1 <= i <= n, got i={i}, n={n}")
    return 1.0 / math.sqrt(2.0 * (n - i) + 1.0)


def in_degree_tail_bound(i: int, epsilon: float, side: str = "upper",
                         mean: float | None = None) -> float:
    """Self-bounding tail bound for the in-degree of the node of rank ``i``.

    upper: exp(-eps^2 m / 4); lower: exp(-3 eps^2 m / 8). ``m`` defaults to
    the asymptotic mean over the ``i - 1`` earlier nodes; pass the exact
    mean to get the bound the inequality actually asserts.
    """
    _check_side(side)
    if epsilon <= 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon}")
    if i < 2:
        raise DomainError("rank i must be >= 2")
    m = in_degree_mean_asymptotic(i - 1) if mean is None else mean
    if side == "upper":
        return math.exp(-(epsilon**2) * m / 4.0)
    return math.exp(-3.0 * epsilon**2 * m / 8.0)


def in_degree_mean_exact(n: int, table: EmbeddedPmfTable | None = None) -> float:
    """E of the in-degree of the node arriving after ``n`` others (mu = 0).

    The k-th newest earlier node serves it with probability equal to the
    success probability of its urn at draw k.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    table = table or embedded_pmf_table(n)
    return math.fsum(table.success_probability(d) for d in range(1, n + 1))


def expected_spanning_trees_log(n: int) -> float:
    """log of (8/9)^(n/2) sqrt(n!), the asymptotic expected arborescence count."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return 0.5 * n * math.log(8.0 / 9.0) + 0.5 * math.lgamma(n + 1)
