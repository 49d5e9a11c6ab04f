"""Shared domain types: model rates, probability vectors and seeded streams.

Every stochastic routine in the package takes an :class:`RngStream`. A stream
is a pure function of ``(master_seed, stream_id)``; nothing reads global
random state or the wall clock.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

#: Absolute slack allowed on probability identities (normalisation, bounds).
PROB_ATOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Arrival rate ``lam`` and per-node death rate ``mu``.

    ``alpha`` is always recomputed from the two rates so the pair can never
    drift apart.
    """

    lam: float
    mu: float

    @property
    def alpha(self) -> float:
        return math.sqrt(self.mu / self.lam)

    @property
    def alpha2(self) -> float:
        return self.mu / self.lam

    @property
    def load(self) -> float:
        """Mean stationary population ``lam / mu`` (infinite when ``mu == 0``)."""
        return math.inf if self.mu == 0 else self.lam / self.mu


def validate_params(lam: float, mu: float) -> ModelParams:
    lam = float(lam)
    mu = float(mu)
    if not (math.isfinite(lam) and math.isfinite(mu)):
        raise DomainError(f"rates must be finite, got lambda={lam}, mu={mu}")
    if lam <= 0:
        raise DomainError(f"lambda must be > 0, got {lam}")
    if mu < 0:
        raise DomainError(f"mu must be >= 0, got {mu}")
    return ModelParams(lam, mu)


@dataclass(frozen=True)
class DistVector:
    """Probability vector on the states ``support_offset, support_offset+1, ...``.

    ``mass_deficit`` is the probability that lives outside the stored window
    (nonzero only for truncated distributions).
    """

    support_offset: int
    probs: np.ndarray
    mass_deficit: float = 0.0

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1:
            raise DomainError("probs must be one-dimensional")
        if self.support_offset < 0:
            raise DomainError("support_offset must be >= 0")
        if probs.size and (probs.min() < -PROB_ATOL or probs.max() > 1 + PROB_ATOL):
            raise DomainError("probabilities must lie in [0, 1]")
        probs = np.clip(probs, 0.0, 1.0)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        total = math.fsum(probs)
        if self.mass_deficit < -PROB_ATOL:
            raise DomainError(f"negative mass deficit {self.mass_deficit}")
        if abs(total + self.mass_deficit - 1.0) > PROB_ATOL:
            raise DomainError(
                f"probs sum to {total!r} with deficit {self.mass_deficit!r}; expected 1"
            )

    @classmethod
    def from_weights(cls, weights, support_offset: int = 0) -> "DistVector":
        """Normalise nonnegative weights into a distribution with no deficit."""
        w = np.asarray(weights, dtype=float)
        total = math.fsum(w)
        if not total > 0:
            raise DomainError("weights must have positive total mass")
        probs = w / total
        return cls(support_offset, probs, max(0.0, 1.0 - math.fsum(probs)))

    @property
    def support_end(self) -> int:
        """One past the last stored state."""
        return self.support_offset + len(self.probs)

    def pmf(self, k: int) -> float:
        if self.support_offset <= k < self.support_end:
            return float(self.probs[k - self.support_offset])
        return 0.0

    def dense(self, length: int | None = None) -> np.ndarray:
        """Probabilities indexed from state 0, zero padded to ``length``."""
        length = self.support_end if length is None else length
        out = np.zeros(max(length, self.support_end))
        out[self.support_offset:self.support_end] = self.probs
        return out[:length]

    def mean(self) -> float:
        ks = np.arange(self.support_offset, self.support_end)
        return float(np.dot(ks, self.probs))


# --- seeded streams ---------------------------------------------------------

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class RngStream:
    """Deterministic random source keyed by ``(master_seed, stream_id)``.

    Sub-streams are addressed by an integer path, e.g. ``stream.generator(2)``.
    Every call with the same path returns a fresh generator positioned at the
    start of the same sequence, so a stream can be re-read but should be owned
    by a single replication.
    """

    master_seed: int
    stream_id: int = 0
    _entropy: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.stream_id < 0:
            raise DomainError("stream_id must be >= 0")
        object.__setattr__(self, "_entropy", int(self.master_seed) % (1 << 64))

    def seed_sequence(self, *path: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(self._entropy, spawn_key=(self.stream_id, *path))

    def generator(self, *path: int) -> np.random.Generator:
        """Counter-based Philox generator for the given sub-stream path."""
        return np.random.Generator(np.random.Philox(self.seed_sequence(*path)))

    def key(self, *path: int) -> np.uint64:
        """64-bit key for :func:`counter_uniforms`."""
        return self.seed_sequence(*path).generate_state(1, np.uint64)[0]


def derive_stream(master_seed: int, stream_id: int) -> RngStream:
    return RngStream(int(master_seed), int(stream_id))


def counter_uniforms(key: np.uint64, counters) -> np.ndarray:
    """Uniforms in [0, 1) as a pure function of ``(key, counter)``.

    This is the SplitMix64 output function evaluated at arbitrary positions,
    which lets a simulator address the draw for (server, client) directly
    instead of consuming a shared sequential stream.
    """
    c = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(key) + (c + np.uint64(1)) * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def pair_counter(server_ids, client_id: int) -> np.ndarray:
    """Counter for the acceptance draw of ``client_id``'s request to each server."""
    s = np.asarray(server_ids, dtype=np.uint64)
    return (s << np.uint64(32)) | np.uint64(client_id)
