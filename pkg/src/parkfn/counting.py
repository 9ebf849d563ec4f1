"""Exact counting formulas for u- and (a,b)-parking functions.

Everything here reduces to three ingredients: Goncarov factors fetched
through the shift-invariance cache, constrained weak compositions, and
power-sum bookkeeping over the threshold blocks (u_s, u_{s+1}].  Formulas
whose exponents can reach -1 are evaluated over Fraction exactly as written
and the final result is asserted integral; the assertion is the transcription
check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .compositions import constrained_compositions, multinomial
from .core import ABParams, InternalInvariantError, UVector
from .goncarov import count_pf_ab, goncarov_eval


def _rpow(base, exponent: int) -> Fraction:
    """base**exponent over exact rationals; negative exponents allowed."""
    return Fraction(base) ** exponent


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InternalInvariantError(f"{what} is not integral: {value}")
    return int(value)


@lru_cache(maxsize=None)
def _goncarov_zero(nodes: tuple[int, ...]) -> Fraction:
    return goncarov_eval(0, nodes)


def _window_factor(u: UVector, start: int, count: int) -> Fraction:
    """g_count(u_{start-1}; u_start, ..., u_{start+count-1}) with u_0 = 0.

    Shift invariance moves the evaluation point to 0, so the cache key is
    just the window's threshold gaps.
    """
    base = 0 if start == 1 else u[start - 2]
    nodes = tuple(u[start - 1 + t] - base for t in range(count))
    return _goncarov_zero(nodes)


def count_prescribed(u: UVector, w: Sequence[int]) -> int:
    """Number of parking functions in PF(u) with first coordinates exactly w.

    ``w`` must be non-decreasing; prefixes in arbitrary order are handled by
    the caller via permutation symmetry.  Sums signed Goncarov products over
    the compositions whose prefix sums keep every w_i below its threshold.
    """
    m = len(u)
    w = tuple(int(x) for x in w)
    l = len(w)
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}, m={m}")
    if any(x < 1 for x in w):
        raise ValueError(f"prescribed values must be positive, got {w}")
    if any(w[i] > w[i + 1] for i in range(l - 1)):
        raise ValueError(f"prescribed prefix must be non-decreasing, got {w}")
    if w[-1] > u[m - 1]:
        return 0
    # u_{P_i + i} >= w_i  <=>  P_i >= (first 1-based index with u >= w_i) - i
    floors = []
    for i, value in enumerate(w, start=1):
        first = next(t for t in range(m) if u[t] >= value) + 1
        floors.append(first - i)
    floors.append(0)
    total = Fraction(0)
    for s in constrained_compositions(m - l, l + 1, floors):
        product = Fraction(multinomial(m - l, s))
        start = 1
        for i, part in enumerate(s, start=1):
            product *= _window_factor(u, start, part)
            start += part + 1
        total += product
    if (m - l) % 2:
        total = -total
    count = _as_integer(total, f"count_prescribed({u.u}, {w})")
    if count < 0:
        raise InternalInvariantError(f"count_prescribed({u.u}, {w}) negative: {count}")
    return count


def count_pf_composition(u: UVector) -> int:
    """|PF(u)| as a sum over feasible segment-length compositions.

    Splits the street at the never-attempted spots: compositions s of m into
    u_m - m + 1 parts, prefix-constrained so the first u_i - i + 1 segments
    hold at least i cars, each segment contributing (s_i+1)^{s_i-1} classical
    parking functions.
    """
    m = len(u)
    parts = u[m - 1] - m + 1
    if parts < 1:
        raise ValueError(f"u_m >= m required, got u={u.u}")
    floors = [0] * parts
    for i in range(1, m + 1):
        t = u[i - 1] - i + 1  # 1-based part index carrying constraint i
        floors[t - 1] = max(floors[t - 1], i)
    total = Fraction(0)
    for s in constrained_compositions(m, parts, floors):
        term = Fraction(multinomial(m, s))
        for part in s:
            term *= _rpow(part + 1, part - 1)
        total += term
    return _as_integer(total, f"count_pf_composition({u.u})")


def count_run_prescribed(p: ABParams, l: int, k: int) -> int:
    """Count of PF(a,b,m) whose first l coordinates are a+kb, ..., a+(k+l-1)b.

    The prescribed preferences sit exactly b apart; the count collapses to a
    single binomial sum with possibly-negative exponents, evaluated over
    rationals and asserted integral.
    """
    a, b, m = p.a, p.b, p.m
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}")
    if not 0 <= k <= m - l:
        raise ValueError(f"need 0 <= k <= m-l, got k={k}")
    total = Fraction(0)
    for s in range(m - l - k + 1):
        total += (
            comb(m - l, s)
            * _rpow(a + (m - l - s) * b, m - s - l - 1)
            * _rpow(b, s)
            * l
            * _rpow(s + l, s - 1)
        )
    total *= a
    return _as_integer(total, f"count_run_prescribed(a={a},b={b},m={m},l={l},k={k})")


def _single_coord_terms(p: ABParams) -> list[Fraction]:
    """Summands of the first-coordinate count, indexed by s = 0..m-1."""
    a, b, m = p.a, p.b, p.m
    return [
        comb(m - 1, s) * _rpow(a + s * b, s - 1) * _rpow((m - s) * b, m - 2 - s)
        for s in range(m)
    ]


def _suffix_sums(terms: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(terms) + 1)
    for s in range(len(terms) - 1, -1, -1):
        out[s] = out[s + 1] + terms[s]
    return out


@dataclass(frozen=True)
class CoordinateDistribution:
    """Exact law of a single coordinate of a uniform (a,b)-parking function."""

    params: ABParams
    counts: tuple[int, ...]  # counts[j-1] = #{pi in PF(a,b,m): pi_1 = j}

    @property
    def support_max(self) -> int:
        return self.params.max_pref

    @property
    def total(self) -> int:
        return count_pf_ab(self.params.a, self.params.b, self.params.m)

    def count(self, j: int) -> int:
        if not 1 <= j <= self.support_max:
            return 0
        return self.counts[j - 1]

    def prob(self, j: int) -> Fraction:
        return Fraction(self.count(j), self.total)


def first_coord_distribution(p: ABParams) -> CoordinateDistribution:
    """N(j) = #{pi: pi_1 = j} for every feasible value j.

    N(j) is ab times a suffix sum of the binomial terms, constant over
    j <= a and non-increasing beyond; both shape facts and the marginal
    total are asserted before returning.
    """
    a, b, m = p.a, p.b, p.m
    suffix = _suffix_sums(_single_coord_terms(p))
    counts = []
    for j in range(1, p.max_pref + 1):
        s_min = 0 if j <= a else -((a - j) // b)  # ceil((j-a)/b)
        counts.append(_as_integer(a * b * suffix[s_min], f"N({j}) for {p}"))
    if sum(counts) != count_pf_ab(a, b, m):
        raise InternalInvariantError(f"first-coordinate counts do not sum to |PF| for {p}")
    if any(counts[j] != counts[0] for j in range(min(a, len(counts)))):
        raise InternalInvariantError(f"first-coordinate counts not constant on [1,a] for {p}")
    if any(counts[j] < counts[j + 1] for j in range(a - 1, len(counts) - 1)):
        raise InternalInvariantError(f"first-coordinate counts increase past a for {p}")
    return CoordinateDistribution(p, tuple(counts))


def _block_power_sums(p: ABParams, exponent: int) -> list[int]:
    """f(s) = sum of j**exponent over the block (u_s, u_{s+1}], s = 0..m-1."""
    a, b, m = p.a, p.b, p.m
    out = []
    hi = 0
    for s in range(m):
        lo, hi = hi, a + s * b
        out.append(sum(j**exponent for j in range(lo + 1, hi + 1)))
    return out


def exact_moment(p: ABParams, pexp: int) -> Fraction:
    """E(pi_1**pexp) for a uniform (a,b)-parking function, exactly."""
    if pexp < 0:
        raise ValueError(f"exponent must be nonnegative, got {pexp}")
    if pexp == 0:
        return Fraction(1)
    a, b, m = p.a, p.b, p.m
    suffix = _suffix_sums(_single_coord_terms(p))
    blocks = _block_power_sums(p, pexp)
    numerator = a * b * sum((f * suffix[s] for s, f in enumerate(blocks)), Fraction(0))
    return numerator / count_pf_ab(a, b, m)


def prescribed_pair_count(p: ABParams, s1: int, s2: int) -> int:
    """#{pi: pi_1 = u_{s1+1}, pi_2 = u_{s2+1}} for block indices s1 <= s2.

    Specialization of the prescribed-coordinate sum to arithmetic thresholds,
    with the two Goncarov tails already collapsed to their closed forms.  For
    s1 == s2 this is the count with both coordinates in a common block, which
    matches the prescription (u_{s1+1}, u_{s1+2}).
    """
    a, b, m = p.a, p.b, p.m
    if m < 2:
        raise ValueError("need m >= 2 for a pair count")
    if not 0 <= s1 <= s2 <= m - 1:
        raise ValueError(f"need 0 <= s1 <= s2 <= m-1, got {s1}, {s2}")
    if s1 == s2 and s1 > m - 2:
        return 0
    total = Fraction(0)
    for t1 in range(s1, m - 1):
        lo = max(0, s2 - 1 - t1)
        for t2 in range(lo, m - 1 - t1):
            t3 = m - 2 - t1 - t2
            total += (
                multinomial(m - 2, (t1, t2, t3))
                * _rpow(b, m - 2 - t1)
                * _rpow(a + t1 * b, t1 - 1)
                * _rpow(t2 + 1, t2 - 1)
                * _rpow(t3 + 1, t3 - 1)
            )
    total *= a
    return _as_integer(total, f"prescribed_pair_count({p}, {s1}, {s2})")


def exact_joint_moment(p: ABParams, pexp: int, qexp: int) -> Fraction:
    """E(pi_1**pexp * pi_2**qexp), exactly.

    Sums j^p k^q against the pair counts block by block, with the summation
    order interchanged so the block sums enter through O(1) prefix-sum
    lookups; total cost is O(m^2) big-integer operations instead of the
    O(m^4) of one prescribed-pair evaluation per block pair.
    """
    if pexp < 1 or qexp < 1:
        raise ValueError(f"exponents must be >= 1, got {pexp}, {qexp}")
    a, b, m = p.a, p.b, p.m
    if m < 2:
        raise ValueError("need m >= 2 for a joint moment")
    f = _block_power_sums(p, pexp)
    g = _block_power_sums(p, qexp)
    F = [0] * m
    G = [0] * m
    FG = [0] * m  # prefix of f(s)g(s)
    fGpre = [0] * m  # prefix of f(s)G(s)
    gFpre = [0] * m  # prefix of g(s)F(s)
    accF = accG = accFG = accfG = accgF = 0
    for s in range(m):
        accF += f[s]
        accG += g[s]
        F[s], G[s] = accF, accG
        accFG += f[s] * g[s]
        FG[s] = accFG
        accfG += f[s] * accG
        fGpre[s] = accfG
        accgF += g[s] * accF
        gFpre[s] = accgF

    m2 = m - 2
    bpow = [1] * (m2 + 1)
    for i in range(1, m2 + 1):
        bpow[i] = bpow[i - 1] * b
    # (t+1)^{t-1}; the t = 0 entry is 1^{-1} = 1
    tpow = [1] * (m2 + 1)
    for t in range(1, m2 + 1):
        tpow[t] = (t + 1) ** (t - 1)
    fact = [1] * (m2 + 1)
    for i in range(1, m2 + 1):
        fact[i] = fact[i - 1] * i

    total_int = 0  # t1 >= 1 rows are plain integers
    total_zero = Fraction(0)  # the t1 = 0 row carries the 1/a factor
    for t1 in range(m2 + 1):
        apow = _rpow(a + t1 * b, t1 - 1)
        row = 0
        for t2 in range(m2 - t1 + 1):
            t3 = m2 - t1 - t2
            coeff = fact[m2] // (fact[t1] * fact[t2] * fact[t3])
            coeff *= bpow[m2 - t1] * tpow[t2] * tpow[t3]
            T2 = t1 + t2 + 1
            w = F[t1] * G[T2] - fGpre[t1] + G[t1] * F[T2] - gFpre[t1] + FG[t1]
            row += coeff * w
        if t1 == 0:
            total_zero += row * apow  # apow = 1/a here
        else:
            total_int += row * int(apow)
    numerator = a * Fraction(total_int) + a * total_zero
    value = numerator / count_pf_ab(a, b, m)
    return value
