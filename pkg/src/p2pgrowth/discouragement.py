"""Positive mortality (mu > 0): the out-degree is a discouragement queue.

Birth rate lam / (1 + k), death rate k mu. This module gives the transient
law as a Taylor series in lam t whose coefficients come from a triangular
recursion, the law of the jump chain, the stationary laws and the mean extra
work of the root.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import stats

from .errors import CapacityError, ConvergenceError, DomainError, InternalError, NumericError
from .model import DistVector, ModelParams

#: Largest Taylor order the series solver will build.
MAX_SERIES_ORDER = 1500
#: Largest jump-chain table accepted by :func:`bd_embedded_table`.
MAX_EMBEDDED_STEPS = 4000

_EPS = np.finfo(float).eps
_QUIET_STEPS = 30


def _require_mortality(params: ModelParams) -> None:
    if params.mu <= 0:
        raise DomainError("mu must be > 0 here; the mu = 0 regime lives in p2pgrowth.growth")


@dataclass(frozen=True)
class STable:
    """Series coefficients ``coeffs[i][k] = S^(k)_i`` for 0 <= k <= i <= order."""

    alpha: float
    order: int
    coeffs: tuple[np.ndarray, ...]

    def __getitem__(self, ik: tuple[int, int]) -> float:
        i, k = ik
        if k < 0 or k > i:
            return 0.0
        return float(self.coeffs[i][k])


def _b(k: np.ndarray, alpha2: float) -> np.ndarray:
    return 1.0 / (k + 1.0) + k * alpha2


@lru_cache(maxsize=32)
def _s_columns(alpha2: float, order: int) -> tuple[np.ndarray, ...]:
    cols = [np.array([1.0])]
    for i in range(order):
        col = cols[-1]
        # pad so that padded[k + 1] = S^(k)_i for k = -1 .. i + 2
        padded = np.zeros(i + 4)
        padded[1:i + 2] = col
        k = np.arange(i + 2)
        nxt = padded[k + 2] - _b(k, alpha2) * padded[k + 1] + alpha2 * padded[k]
        if not np.all(np.isfinite(nxt)):
            raise NumericError(f"series coefficients overflow double range at order {i + 1}")
        nxt.setflags(write=False)
        cols.append(nxt)
    return tuple(cols)


def build_s_table(params: ModelParams, order: int) -> STable:
    """Coefficients of the transient series, filled column by column in i.

    Column i+1 follows from column i through
    S^(k)_{i+1} = S^(k+1)_i - b_k S^(k)_i + alpha^2 S^(k-1)_i, k = 0..i+1,
    with b_k = 1/(k+1) + k alpha^2 and S^(k)_i = 0 outside 0 <= k <= i.
    """
    _require_mortality(params)
    if order < 0:
        raise DomainError("order must be >= 0")
    if order > MAX_SERIES_ORDER:
        raise CapacityError(f"order {order} exceeds MAX_SERIES_ORDER={MAX_SERIES_ORDER}")
    return STable(params.alpha, order, _s_columns(params.alpha2, order))


def _series_terms(x: float, alpha2: float, order: int):
    """Yield the order-i terms S^(k)_i x^i / (i! alpha^(2k) k!) for i = 0..order.

    Dividing the coefficient recursion by those factors gives
    v_{i+1}[k] = x/(i+1) * (alpha^2 (k+1) v_i[k+1] - b_k v_i[k] + v_i[k-1] / k),
    which keeps every intermediate at the size of a series term instead of
    the factorial growth of the raw coefficients.
    """
    size = order + 2
    k = np.arange(size, dtype=float)
    b = _b(k, alpha2)
    up = alpha2 * k[1:]
    inv_k = 1.0 / k[1:]
    v = np.zeros(size)
    v[0] = 1.0
    yield 0, v
    for i in range(order):
        nxt = -b * v
        nxt[:-1] += up * v[1:]
        nxt[1:] += inv_k * v[:-1]
        v = nxt * (x / (i + 1))
        yield i + 1, v


def bd_transient_dist(t: float, params: ModelParams, tol: float = 1e-9) -> DistVector:
    """Transient law p(., t) from X(0) = 0 by summing the Taylor series.

    Summation stops once 30 consecutive orders change no entry by more than
    ``tol * 1e-3`` and the running total is within ``tol`` of one. The series
    converges for every t but its terms peak near exp(c lam t); past
    lam t ~ 4 the rounding error exceeds useful tolerances and a
    :class:`NumericError` is raised instead of returning noise.
    """
    _require_mortality(params)
    if t < 0:
        raise DomainError("t must be >= 0")
    if not 0 < tol < 1e-3:
        raise DomainError("tol must lie in (0, 1e-3)")
    if t == 0:
        return DistVector(0, np.array([1.0]))

    x = params.lam * t
    quiet_limit = tol * 1e-3
    total = np.zeros(MAX_SERIES_ORDER + 2)
    abs_total = np.zeros_like(total)
    quiet = 0
    for i, term in _series_terms(x, params.alpha2, MAX_SERIES_ORDER):
        if not np.all(np.isfinite(term)):
            raise NumericError(f"series terms overflow at order {i} for lam*t={x:g}")
        total += term
        abs_total += np.abs(term)
        quiet = quiet + 1 if np.max(np.abs(term)) < quiet_limit else 0
        if quiet >= _QUIET_STEPS:
            if abs(math.fsum(total) - 1.0) <= tol:
                return _finish_series(total[:i + 1], abs_total[:i + 1], tol, x)
            _check_rounding(abs_total, tol, x)
    raise ConvergenceError(
        f"series for lam*t={x:g} did not settle within order {MAX_SERIES_ORDER}"
    )


def _check_rounding(abs_total: np.ndarray, tol: float, x: float) -> None:
    rounding = 16 * _EPS * abs_total.max()
    if rounding > tol:
        raise NumericError(
            f"cancellation in the series at lam*t={x:g}: rounding error ~{rounding:.1e} > tol"
        )


def _finish_series(total: np.ndarray, abs_total: np.ndarray, tol: float, x: float) -> DistVector:
    _check_rounding(abs_total, tol, x)
    if total.min() < -tol or total.max() > 1 + tol:
        raise NumericError(f"series value outside [-tol, 1+tol] at lam*t={x:g}")
    probs = np.clip(total, 0.0, 1.0)
    s = math.fsum(probs)
    if s > 1.0:
        probs = probs / s
        s = math.fsum(probs)
    return DistVector(0, probs, max(0.0, 1.0 - s))


def bd_transient_pmf(k: int, t: float, params: ModelParams, tol: float = 1e-9) -> float:
    """P(X(t) = k) for the discouragement queue started empty."""
    if k < 0:
        raise DomainError("k must be >= 0")
    return bd_transient_dist(t, params, tol).pmf(k)


# --- jump chain --------------------------------------------------------------

@dataclass(frozen=True)
class BdEmbeddedTable:
    """Law of the jump chain after n transitions, ``rows[n][k]``.

    ``d`` and ``t_layers`` are the ingredients of the product form
    p_{n,k} = d_k T^((n-k)/2)_k that is checked against the recursion.
    """

    alpha: float
    n_max: int
    rows: tuple[np.ndarray, ...]
    d: np.ndarray
    t_layers: tuple[np.ndarray, ...]

    def row(self, n: int) -> DistVector:
        return DistVector(0, self.rows[n])


def jump_up_probability(j, alpha2: float):
    """Probability that the jump chain moves j -> j+1 (1 at j = 0)."""
    j = np.asarray(j, dtype=float)
    return 1.0 / (1.0 + j * (j + 1.0) * alpha2)


def _embedded_recursion(alpha2: float, n_max: int) -> list[np.ndarray]:
    rows = [np.array([1.0])]
    for n in range(n_max):
        prev = rows[-1]
        up = jump_up_probability(np.arange(n + 1), alpha2)
        nxt = np.zeros(n + 2)
        nxt[1:] += prev * up
        nxt[:-2] += prev[1:] * (1.0 - up[1:])
        rows.append(nxt)
    return rows


def _embedded_product_form(alpha2: float, n_max: int):
    width = n_max + 3
    j = np.arange(width + 1, dtype=float)
    r = 1.0 / (1.0 + j * (j - 1.0) * alpha2)
    with np.errstate(under="ignore"):
        d = np.cumprod(r)
    # (d_{i+1} - d_{i+2}) / d_i without forming the (underflowing) d's
    c = r[1:-1] * (1.0 - r[2:])
    layers = [np.ones(width)]
    for _ in range(n_max // 2):
        prev = layers[-1]
        layers.append(np.cumsum(c[:width - 1] * prev[1:width]))
        width -= 1
    rows = []
    for n in range(n_max + 1):
        row = np.zeros(n + 1)
        for k in range(n % 2, n + 1, 2):
            row[k] = d[k] * layers[(n - k) // 2][k]
        rows.append(row)
    return d, layers, rows


def bd_embedded_table(params: ModelParams, n_max: int, atol: float = 1e-10) -> BdEmbeddedTable:
    """Jump-chain law by recursion, cross-checked against the product form."""
    _require_mortality(params)
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if n_max > MAX_EMBEDDED_STEPS:
        raise CapacityError(f"n_max={n_max} exceeds MAX_EMBEDDED_STEPS={MAX_EMBEDDED_STEPS}")
    alpha2 = params.alpha2
    rows = _embedded_recursion(alpha2, n_max)
    d, layers, closed = _embedded_product_form(alpha2, n_max)
    for n, (a, b) in enumerate(zip(rows, closed)):
        ok = np.isfinite(b)
        gap = np.max(np.abs(a[ok] - b[ok])) if ok.any() else 0.0
        if gap > atol:
            raise InternalError(f"jump-chain recursion and product form differ by {gap:.3e} at n={n}")
    for row in rows:
        row.setflags(write=False)
    return BdEmbeddedTable(params.alpha, n_max, tuple(rows), d, tuple(layers))


# --- stationary laws -----------------------------------------------------------

def _log_weights(rho: float, count: int) -> np.ndarray:
    ks = np.arange(count)
    return ks * math.log(rho) - 2.0 * np.array([math.lgamma(k + 1) for k in ks])


def steady_state_conditional(n: int, l: int | None, params: ModelParams) -> DistVector:
    """Stationary out-degree of the n-th node given N = l nodes besides the root.

    Weights (lam/mu)^k / (k!)^2 on k = 0..l-n-1, normalised on that support.
    ``l=None`` drops the conditioning and returns the untruncated law
    (normaliser I_0(2 sqrt(lam/mu))), cut where the remaining mass is below
    1e-17.
    """
    _require_mortality(params)
    rho = params.lam / params.mu
    if l is None:
        log_norm = math.log(_bessel_i0_series(rho))
        probs = np.exp(_log_weights(rho, int(6 * math.sqrt(rho)) + 40) - log_norm)
        # past the mode the terms fall faster than geometrically
        keep = max(int(math.sqrt(rho)) + 1, int(np.nonzero(probs >= 1e-18)[0][-1]) + 1)
        probs = probs[:keep]
        return DistVector(0, probs, max(0.0, 1.0 - math.fsum(probs)))
    if n < 1:
        raise DomainError("node rank n must be >= 1")
    if n >= l:
        raise DomainError(f"node {n} is not alive when N = {l}")
    logw = _log_weights(rho, l - n)
    return DistVector.from_weights(np.exp(logw - logw.max()))


def _bessel_i0_series(rho: float) -> float:
    """sum_k rho^k / (k!)^2 = I_0(2 sqrt(rho))."""
    from scipy.special import i0e

    z = 2.0 * math.sqrt(rho)
    return float(i0e(z)) * math.exp(z)


def _prefix_normalisers(rho: float, m_max: int) -> np.ndarray:
    """Z[m] = sum_{j < m} rho^j / (j!)^2 for m = 0..m_max (Z[0] = 0)."""
    w = np.exp(_log_weights(rho, m_max))
    return np.concatenate([[0.0], np.cumsum(w)])


def poisson_tail(rho: float, l_cap: int) -> float:
    """P(N > l_cap) for N ~ Poisson(rho)."""
    return float(stats.poisson.sf(l_cap, rho))


def steady_state_unconditional(n: int, k: int, params: ModelParams, l_cap: int = 200) -> float:
    """Stationary out-degree law of the n-th node, averaged over N ~ Poisson(lam/mu).

    sum_{l > n+k} P(N = l) pi^n_{k,l}, divided by P(N > n) so that it is the
    law of the n-th node's out-degree given that the node exists. The sum is
    cut at ``l_cap``; the neglected Poisson mass must be below 1e-10.
    """
    _require_mortality(params)
    if n < 1 or k < 0:
        raise DomainError("need n >= 1 and k >= 0")
    rho = params.lam / params.mu
    tail = poisson_tail(rho, l_cap)
    if tail > 1e-10:
        raise ConvergenceError(f"Poisson({rho:g}) mass beyond l_cap={l_cap} is {tail:.2e} > 1e-10")
    if n + k + 1 > l_cap:
        warnings.warn(
            f"state k={k} of node {n} only occurs beyond l_cap={l_cap}; "
            f"returning 0 (neglected mass <= {tail:.1e})",
            stacklevel=2,
        )
        return 0.0
    ls = np.arange(n + k + 1, l_cap + 1)
    z = _prefix_normalisers(rho, l_cap - n)
    wk = math.exp(_log_weights(rho, k + 1)[-1])
    mix = math.fsum(stats.poisson.pmf(ls, rho) * wk / z[ls - n])
    return mix / float(stats.poisson.sf(n, rho))


def root_extra_work_mean(params: ModelParams) -> float:
    """Asymptotic mean extra work of the root, sqrt(lam / mu)."""
    _require_mortality(params)
    return math.sqrt(params.lam / params.mu)
