"""Empirical-vs-model comparisons used by the validation suite."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import DistVector

Z95 = 1.959963984540054


@dataclass(frozen=True)
class EmpiricalDist:
    """Counts of observed integer states ``0, 1, ...``."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 1 or (counts.size and counts.min() < 0):
            raise DomainError("counts must be a nonnegative 1-d array")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_samples(cls, samples) -> "EmpiricalDist":
        samples = np.asarray(samples)
        if samples.size and samples.min() < 0:
            raise DomainError("states must be nonnegative integers")
        return cls(np.bincount(samples.astype(np.int64).ravel()))

    @property
    def size(self) -> int:
        return int(self.counts.sum())

    def frequencies(self) -> np.ndarray:
        if self.size == 0:
            raise DomainError("empty sample")
        return self.counts / self.size

    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.counts)), self.frequencies()))


def tv_between(p, q) -> float:
    """Half the L1 distance between two probability vectors indexed from 0."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    n = max(len(p), len(q))
    p = np.pad(p, (0, n - len(p)))
    q = np.pad(q, (0, n - len(q)))
    return 0.5 * float(np.abs(p - q).sum())


def tv_distance(emp: EmpiricalDist, model: DistVector) -> float:
    """TV distance between observed frequencies and a model vector.

    Model mass outside the stored window (``mass_deficit``) is counted as
    unmatched, so a truncated model can only make the distance larger.
    """
    if emp.size == 0:
        raise DomainError("empirical distribution has zero sample size")
    tv = tv_between(emp.frequencies(), model.dense()) + 0.5 * model.mass_deficit
    return min(1.0, tv)


@dataclass(frozen=True)
class TailFrequency:
    freq: float
    lower: float
    upper: float
    n: int

    @property
    def std_error(self) -> float:
        """Half-width of the 95% Wilson interval expressed in standard errors."""
        return (self.upper - self.lower) / (2 * Z95)


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n <= 0:
        raise DomainError("need at least one trial")
    p = successes / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == n else min(1.0, centre + half)
    return lo, hi


def tail_exceedance(samples, threshold: float, side: str = "upper") -> TailFrequency:
    """Frequency of ``samples >= threshold`` (or ``<=`` for ``side="lower"``)."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise DomainError("need at least one sample")
    if side == "upper":
        hits = int(np.count_nonzero(x >= threshold))
    elif side == "lower":
        hits = int(np.count_nonzero(x <= threshold))
    else:
        raise DomainError(f"side must be 'upper' or 'lower', got {side!r}")
    lo, hi = wilson_interval(hits, x.size)
    return TailFrequency(hits / x.size, lo, hi, int(x.size))


@dataclass(frozen=True)
class MeanCI:
    mean: float
    lower: float
    upper: float
    std_error: float


def mean_ci(samples) -> MeanCI:
    x = np.asarray(samples, dtype=float)
    if x.size < 2:
        raise DomainError("need at least two samples")
    m = float(x.mean())
    se = float(x.std(ddof=1)) / math.sqrt(x.size)
    return MeanCI(m, m - Z95 * se, m + Z95 * se, se)
