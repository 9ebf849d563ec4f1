"""Uniform random (a,b)-parking functions via the cycle construction.

Draw a word uniformly from [1, a+mb]^m, find the set K of cyclic shifts that
turn it into a parking function (there are always exactly a of them), and
apply one of those shifts uniformly at random.  The shift sweep has a naive
reference implementation and a vectorized one; they are validated against
each other, and |K| = a is asserted on every draw.

Randomness comes from the stdlib Mersenne Twister seeded with a 64-bit
integer; uniform integers are drawn by rejection on ``getrandbits`` so the
stream is reproducible and free of modulo bias.  Worker seeds for parallel
runs are derived with the SplitMix64 finalizer.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import ABParams, InternalInvariantError

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, index: int) -> int:
    """Deterministic child seed for worker ``index`` (SplitMix64 finalizer)."""
    z = (seed + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _shift_set_naive(params: ABParams, word: tuple[int, ...]) -> list[int]:
    """All shifts k whose wrapped translate of ``word`` parks, by re-sorting."""
    a, b, m = params.a, params.b, params.m
    modulus = a + m * b
    out = []
    for k in range(modulus):
        shifted = sorted((v + k - 1) % modulus + 1 for v in word)
        if all(shifted[i] <= a + i * b for i in range(m)):
            out.append(k)
    return out


_INDEX_CACHE: dict[tuple[int, int, int], tuple] = {}


def _index_tables(a: int, b: int, m: int) -> tuple:
    """Precomputed gather indices for the vectorized shift sweep.

    With P[x] = #{entries <= x} and d = u_j - k, the wrapped translate by k
    satisfies #{entries <= u_j} = P[max(d, 0)] + P[M if d >= 0 else M+d]
    - P[M-k]; only P depends on the word, so everything else is cached per
    parameter triple.
    """
    key = (a, b, m)
    cached = _INDEX_CACHE.get(key)
    if cached is not None:
        return cached
    modulus = a + m * b
    shifts = np.arange(modulus)
    u = np.arange(a, a + m * b, b, dtype=np.int64)
    d = u[:, None] - shifts[None, :]
    idx_below = np.where(d >= 1, d, 0)
    idx_above = np.where(d >= 0, modulus, modulus + d)
    idx_wrap = modulus - shifts
    j_col = np.arange(1, m + 1)[:, None]
    tables = (modulus, shifts, idx_below, idx_above, idx_wrap, j_col)
    _INDEX_CACHE[key] = tables
    return tables


def _shift_set_fast(params: ABParams, word: tuple[int, ...]) -> list[int]:
    """Shift set from one cumulative count table, all shifts at once."""
    modulus, shifts, idx_below, idx_above, idx_wrap, j_col = _index_tables(
        params.a, params.b, params.m
    )
    counts = np.bincount(np.asarray(word), minlength=modulus + 1)
    table = np.cumsum(counts)
    reach = table[idx_below] + table[idx_above] - table[idx_wrap][None, :]
    ok = (reach >= j_col).all(axis=0)
    return shifts[ok].tolist()


@dataclass
class SamplerState:
    """Seeded sampler for PF(a,b,m); one state yields one reproducible stream."""

    params: ABParams
    seed: int = 0
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    def _randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by top-bits rejection."""
        bits = (n - 1).bit_length() if n > 1 else 1
        while True:
            r = self._rng.getrandbits(bits)
            if r < n:
                return r

    def sample(self) -> tuple[int, ...]:
        """One parking function, uniform on PF(a,b,m)."""
        params = self.params
        a, b, m = params.a, params.b, params.m
        modulus = a + m * b
        word = tuple(self._randbelow(modulus) + 1 for _ in range(m))
        if m * modulus <= 256:
            shifts = _shift_set_naive(params, word)
        else:
            shifts = _shift_set_fast(params, word)
        if len(shifts) != a:
            raise InternalInvariantError(
                f"cycle argument violated: {len(shifts)} parking shifts, expected a={a}"
            )
        k = shifts[self._randbelow(a)]
        return tuple((v + k - 1) % modulus + 1 for v in word)


@dataclass(frozen=True)
class MonteCarloStats:
    """Accumulated sample statistics; accumulators are exact integer sums.

    Merging two records adds their accumulators, so merges are exact,
    associative, and order-independent.  Derived statistics are computed on
    demand (sample variance/covariance use the n-1 denominator and are None
    below two samples).
    """

    params: ABParams
    seeds: tuple[int, ...]
    n_samples: int
    sum_c1: int
    sum_c1_sq: int
    sum_c2: int
    sum_c12: int
    sum_d: int
    sum_d2: int
    sum_d3: int
    sum_d4: int
    hist_coord: Counter
    hist_disp: Counter

    @property
    def mean_coord(self) -> float:
        return self.sum_c1 / self.n_samples

    @property
    def var_coord(self) -> float | None:
        if self.n_samples < 2:
            return None
        n = self.n_samples
        return float((Fraction(self.sum_c1_sq) - Fraction(self.sum_c1**2, n)) / (n - 1))

    @property
    def cov_coords(self) -> float | None:
        if self.n_samples < 2 or self.params.m < 2:
            return None
        n = self.n_samples
        cross = Fraction(self.sum_c12) - Fraction(self.sum_c1 * self.sum_c2, n)
        return float(cross / (n - 1))

    @property
    def mean_disp(self) -> float:
        return self.sum_d / self.n_samples

    @property
    def var_disp(self) -> float | None:
        if self.n_samples < 2:
            return None
        n = self.n_samples
        return float((Fraction(self.sum_d2) - Fraction(self.sum_d**2, n)) / (n - 1))

    @property
    def central_moment4_disp(self) -> float:
        """Fourth central moment of displacement (for variance standard errors)."""
        n = self.n_samples
        mu = Fraction(self.sum_d, n)
        m4 = (
            Fraction(self.sum_d4)
            - 4 * mu * self.sum_d3
            + 6 * mu**2 * self.sum_d2
            - 3 * n * mu**4
        ) / n
        return float(m4)

    def merge(self, other: "MonteCarloStats") -> "MonteCarloStats":
        if self.params != other.params:
            raise ValueError("cannot merge statistics for different parameters")
        return MonteCarloStats(
            params=self.params,
            seeds=self.seeds + other.seeds,
            n_samples=self.n_samples + other.n_samples,
            sum_c1=self.sum_c1 + other.sum_c1,
            sum_c1_sq=self.sum_c1_sq + other.sum_c1_sq,
            sum_c2=self.sum_c2 + other.sum_c2,
            sum_c12=self.sum_c12 + other.sum_c12,
            sum_d=self.sum_d + other.sum_d,
            sum_d2=self.sum_d2 + other.sum_d2,
            sum_d3=self.sum_d3 + other.sum_d3,
            sum_d4=self.sum_d4 + other.sum_d4,
            hist_coord=self.hist_coord + other.hist_coord,
            hist_disp=self.hist_disp + other.hist_disp,
        )


def estimate_statistics(params: ABParams, n_samples: int, seed: int = 0) -> MonteCarloStats:
    """Sample n_samples parking functions and accumulate coordinate and
    displacement statistics; bit-identical for identical arguments."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    state = SamplerState(params, seed)
    a, b, m = params.a, params.b, params.m
    disp_base = b * (m * (m - 1) // 2) + a * m
    sum_c1 = sum_c1_sq = sum_c2 = sum_c12 = 0
    sum_d = sum_d2 = sum_d3 = sum_d4 = 0
    hist_coord: Counter = Counter()
    hist_disp: Counter = Counter()
    for _ in range(n_samples):
        pi = state.sample()
        c1 = pi[0]
        sum_c1 += c1
        sum_c1_sq += c1 * c1
        if m >= 2:
            sum_c2 += pi[1]
            sum_c12 += c1 * pi[1]
        d = disp_base - sum(pi)
        sum_d += d
        d2 = d * d
        sum_d2 += d2
        sum_d3 += d2 * d
        sum_d4 += d2 * d2
        hist_coord[c1] += 1
        hist_disp[d] += 1
    return MonteCarloStats(
        params=params,
        seeds=(seed,),
        n_samples=n_samples,
        sum_c1=sum_c1,
        sum_c1_sq=sum_c1_sq,
        sum_c2=sum_c2,
        sum_c12=sum_c12,
        sum_d=sum_d,
        sum_d2=sum_d2,
        sum_d3=sum_d3,
        sum_d4=sum_d4,
        hist_coord=hist_coord,
        hist_disp=hist_disp,
    )
