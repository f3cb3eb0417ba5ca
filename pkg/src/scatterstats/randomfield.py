"""Quasi-Monte Carlo parameter sampling via the Halton sequence.

Coordinate ``j`` of the point with index ``i >= 1`` is the radical inverse
of ``i`` in the ``j``-th prime base.  Points fill the unit cube and are
mapped affinely onto [-1, 1]^P.  No scrambling or leaping; the map from
``(start_index, count, dimension)`` to the sample block is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


def first_primes(count):
    """The first ``count`` primes in increasing order."""
    if count < 1:
        raise DimensionError("prime count must be >= 1")
    # upper bound p_n < n(ln n + ln ln n) for n >= 6
    if count < 6:
        bound = 14
    else:
        bound = int(count * (np.log(count) + np.log(np.log(count)))) + 10
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    primes = np.flatnonzero(sieve)
    return primes[:count].astype(np.int64)


def radical_inverse(indices, base):
    """Radical inverse of one or more integer indices in the given base."""
    idx = np.atleast_1d(np.asarray(indices, dtype=np.int64)).copy()
    if (idx < 0).any():
        raise DimensionError("Halton indices must be >= 0")
    out = np.zeros(idx.shape, dtype=np.float64)
    scale = 1.0 / base
    while (idx > 0).any():
        out += (idx % base) * scale
        idx //= base
        scale /= base
    return out if np.ndim(indices) else out[0]


def halton_point(index, dimension):
    """Halton point with 1-based index in [0, 1)^dimension."""
    if index < 1:
        raise DimensionError("Halton point index must be >= 1")
    bases = first_primes(dimension)
    return np.array([radical_inverse(index, int(b)) for b in bases])


@dataclass(frozen=True)
class HaltonSampler:
    """Deterministic sampler producing parameter vectors in [-1, 1]^P."""

    dimension: int
    start_index: int = 1

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionError("sampler dimension must be >= 1")
        if self.start_index < 1:
            raise DimensionError("start index must be >= 1")

    def points(self, count):
        """``count`` consecutive Halton points, shape (count, dimension)."""
        if count < 1:
            raise DimensionError("sample count must be >= 1")
        indices = self.start_index + np.arange(count, dtype=np.int64)
        bases = first_primes(self.dimension)
        out = np.empty((count, self.dimension), dtype=np.float64)
        for j, b in enumerate(bases):
            out[:, j] = radical_inverse(indices, int(b))
        return out

    def parameters(self, count):
        """Halton points mapped onto the cube [-1, 1]^dimension."""
        return 2.0 * self.points(count) - 1.0
