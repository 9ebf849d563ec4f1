"""Asymptotic laws for uniform (a,b)-parking functions with a = cm + b.

The generic regime c > 0 and the special regime c = 0 follow different
expansions; every operation returns its truncated expansion verbatim, with
the dropped order documented, and raises RegimeError rather than guessing
when asked for a formula outside its regime.  The exact constrained
power-sum that backs the expansions is also provided so the truncations can
be tested against ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ABParams

EXP_NEG1 = math.exp(-1)


class RegimeError(ValueError):
    """An operation was asked for outside the regime (c = 0 vs c > 0) it serves."""


@dataclass(frozen=True)
class Regime:
    """Scaling a = c*m + b of the threshold progression."""

    b: int
    c: Fraction
    m: int

    def __init__(self, b: int, c, m: int):
        if b < 1 or m < 1:
            raise ValueError(f"b and m must be positive, got b={b} m={m}")
        c = Fraction(c)
        if c < 0:
            raise ValueError(f"c must be nonnegative, got {c}")
        object.__setattr__(self, "b", int(b))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "m", int(m))

    @property
    def is_special(self) -> bool:
        return self.c == 0

    @property
    def params(self) -> ABParams:
        """Exact parameters; requires c*m integral."""
        return ABParams.from_rate(self.b, self.c, self.m)


def _tree_series(z: float) -> float:
    # term ratio is below z*e*(s+2)/(s+1) <= 0.82 for z <= 0.25, so the tail
    # after stopping is bounded by term * r/(1-r) with r = 0.82
    total = 1.0
    term = 1.0
    s = 0
    while True:
        s += 1
        term *= z * (1.0 + 1.0 / s) ** (s - 2) * (s + 1) / s
        total += term
        if term < 1e-17 * total and term * 0.82 / 0.18 < 1e-13 * total:
            return total
        if s > 400:
            raise RuntimeError("tree function series failed to converge")


def _invert_xe(z: float) -> float:
    """Solve x*exp(-x) = z for x in [0, 1]."""
    gap = 1.0 - math.e * z
    p = math.sqrt(2.0 * max(gap, 0.0))
    if gap < 1e-6:
        # branch-point series of the principal Lambert W at -1/e
        return 1.0 - p + p**2 / 3.0 - 11.0 * p**3 / 72.0 + 43.0 * p**4 / 540.0
    x = min(1.0 - p * 0.9, 0.999)
    for _ in range(200):
        # f is increasing and concave on [0, 1]: Newton from below is monotone
        step = (x - z * math.exp(x)) / (1.0 - x)
        x -= step
        if abs(step) < 1e-16 * (1.0 + x):
            break
    return x


def tree_function(z: float) -> float:
    """F(z) = sum z^s (s+1)^{s-1} / s!, the inverse of x e^{-x} composed with e^x.

    Defined for 0 <= z <= 1/e; series evaluation for small z, monotone Newton
    inversion of x e^{-x} elsewhere.  Relative accuracy ~1e-12 away from the
    right endpoint, degrading gracefully at the branch point itself.
    """
    if z < 0 or z > EXP_NEG1 * (1 + 1e-12):
        raise ValueError(f"tree function defined on [0, 1/e], got {z}")
    z = min(z, EXP_NEG1)
    if z == 0:
        return 1.0
    if z <= 0.2:
        return _tree_series(z)
    return math.exp(_invert_xe(z))


@dataclass(frozen=True)
class BorelLaw:
    """Borel distribution: pmf(j) = e^{-mu j} (mu j)^{j-1} / j! on j = 1, 2, ..."""

    mu: float

    def __post_init__(self):
        if not 0 <= self.mu <= 1:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")

    def pmf(self, j: int) -> float:
        if j < 1:
            raise ValueError(f"support starts at 1, got j={j}")
        if self.mu == 0:
            return 1.0 if j == 1 else 0.0
        return math.exp(-self.mu * j + (j - 1) * math.log(self.mu * j) - math.lgamma(j + 1))

    def tail(self, j: int) -> float:
        """Q(j) = P(X >= j) via the complement of the finite head sum."""
        if j < 1:
            raise ValueError(f"support starts at 1, got j={j}")
        return 1.0 - math.fsum(self.pmf(i) for i in range(1, j))


def borel_pmf(mu: float, j: int) -> float:
    return BorelLaw(mu).pmf(j)


def borel_tail(mu: float, j: int) -> float:
    return BorelLaw(mu).tail(j)


def asym_mixed_moment(regime: Regime, p: Sequence[int]) -> float:
    """Two-term expansion of E(prod pi_i^{p_i}) in the generic regime c > 0.

    The dropped term is O(m^{-2}) relative.
    """
    if regime.is_special:
        raise RegimeError("mixed-moment expansion requires c > 0; use asym_moments_c0")
    p = tuple(int(v) for v in p)
    if not p or any(v < 1 for v in p):
        raise ValueError(f"exponents must be positive integers, got {p}")
    b, c, m = regime.b, float(regime.c), regime.m
    total = sum(p)
    l = len(p)
    lead = ((b + c) * m) ** total
    for v in p:
        lead /= v + 1
    correction = (c * (total + l) / 2 - b * b * total) / (c * (b + c) * m)
    return lead * (1.0 + correction)


def asym_var_cov(regime: Regime) -> tuple[float, float]:
    """Asymptotic (Var(pi_1), Cov(pi_1, pi_2)) in the appropriate regime."""
    b, c, m = regime.b, float(regime.c), regime.m
    if regime.is_special:
        var = b * b * m * m / 12 + b * b * (4 - 3 * math.pi) * m / 24
        cov = b * b * (8 - 3 * math.pi) * m / 24
        return var, cov
    var = ((b + c) * m) ** 2 / 12 - b * b * (b + c) * m / (6 * c)
    cov = -(b * b) * (b + c) ** 2 / (4 * c * c)
    return var, cov


def asym_moments_c0(b: int, m: int) -> tuple[float, float, float]:
    """The c = 0 expansions of E(pi_1), E(pi_1^2), E(pi_1 pi_2)."""
    if b < 1 or m < 1:
        raise ValueError(f"b and m must be positive, got b={b} m={m}")
    root = math.sqrt(2 * math.pi) / 4
    e1 = b * (m / 2 - root * math.sqrt(m) + 7 / 6) + 1 / 2
    e2 = b * b * (m * m / 3 - root * m**1.5 + 4 * m / 3) + b * m / 2
    e11 = b * b * (m * m / 4 - root * m**1.5 + 3 * m / 2) + b * m / 2
    return e1, e2, e11


def asym_displacement(regime: Regime) -> tuple[float, float]:
    """Asymptotic (mean, variance) of the displacement statistic."""
    b, c, m = regime.b, float(regime.c), regime.m
    if regime.is_special:
        mean = b * math.sqrt(2 * math.pi) / 4 * m**1.5 - (2 * b / 3 + 1 / 2) * m
        var = b * b * (10 - 3 * math.pi) / 24 * m**3
        return mean, var
    mean = c * m * m / 2 + (b * b / (2 * c) + b / 2 - 1 / 2) * m
    var = (b + c) ** 2 / 12 * m**3
    return mean, var


def _poisson_head_log(rate: float, t: int) -> float:
    """log P(Y < t) for Y ~ Poisson(rate), by log-space summation."""
    if t <= 0:
        return -math.inf
    logs = [-rate + i * math.log(rate) - math.lgamma(i + 1) for i in range(t)]
    top = max(logs)
    return top + math.log(math.fsum(math.exp(v - top) for v in logs))


def asym_boundary(regime: Regime, side: str, j: int) -> float:
    """Boundary law of a single coordinate, j steps inside the relevant end.

    ``right``: P(pi_1 = a+(m-1)b - j) via the Borel-b/(b+c) tail (works for
    c >= 0).  ``left``: P(pi_1 = a + j); the plateau value sits at j = 0, and
    the decay past it is rescaled-Poisson for c > 0 and Borel-1 for c = 0.
    """
    if j < 0:
        raise ValueError(f"offset j must be nonnegative, got {j}")
    b, c, m = regime.b, float(regime.c), regime.m
    if side == "right":
        law = BorelLaw(b / (b + c))
        return (1.0 - law.tail(j // b + 2)) / ((b + c) * m)
    if side != "left":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if regime.is_special:
        law = BorelLaw(1.0)
        return (1.0 + law.tail(-(-j // b) + 1)) / (b * m)
    plateau = 1.0 / ((b + c) * m)
    t = -(-j // b)  # ceil(j/b); zero inside the flat region
    if t == 0:
        return plateau
    # e^{cm/(be)} (b/(b+c))^{m-1} would overflow/underflow on its own; fold
    # everything, including P(Y < t), into one exponent
    log_factor = (
        c * m / (b * math.e)
        - b / (b + c)
        + (m - 1) * math.log(b / (b + c))
        - math.log(c)
        - 2 * math.log(m)
    )
    correction = -math.exp(log_factor + _poisson_head_log(c * m / (b * math.e), t))
    return plateau + correction


def _block_sum(a: int, b: int, s: int, exponent: int) -> int:
    lo = 0 if s == 0 else a + (s - 1) * b
    hi = a + s * b
    return sum(x**exponent for x in range(lo + 1, hi + 1))


def constrained_power_sum(
    regime: Regime, p: Sequence[int], S: Sequence[int]
) -> tuple[int, float]:
    """Exact and asymptotic sides of the staged constrained block sum.

    Summing prod f_i(s_i) with f_i(s) the block power sum, over index tuples
    where at least k of the s_i stay below S_k for every k.  The exact side
    evaluates the staged inclusion-exclusion (supported for l <= 3); the
    asymptotic side is the closed two-term expansion.
    """
    p = tuple(int(v) for v in p)
    S = tuple(int(v) for v in S)
    l = len(p)
    if l == 0 or len(S) != l:
        raise ValueError("need matching nonempty exponent and bound sequences")
    if any(v < 1 for v in p):
        raise ValueError(f"exponents must be positive, got {p}")
    if any(S[i] >= S[i + 1] for i in range(l - 1)):
        raise ValueError(f"bounds must be strictly increasing, got {S}")
    if S[0] < 0 or S[-1] > regime.m - 1:
        raise ValueError(f"bounds must lie in [0, m-1], got {S}")
    if l > 3:
        raise ValueError(f"exact evaluation supported for l <= 3, got l={l}")
    params = regime.params
    a, b = params.a, params.b

    blocks = [[_block_sum(a, b, s, e) for s in range(S[-1] + 1)] for e in p]

    def window(i: int, lo: int, hi: int) -> int:
        return sum(blocks[i][lo : hi + 1])

    if l == 1:
        exact = window(0, 0, S[0])
    elif l == 2:
        exact = window(0, 0, S[1]) * window(1, 0, S[1])
        exact -= window(0, S[0] + 1, S[1]) * window(1, S[0] + 1, S[1])
    else:
        exact = math.prod(window(i, 0, S[2]) for i in range(3))
        exact -= math.prod(window(i, S[0] + 1, S[2]) for i in range(3))
        for i in range(3):
            others = math.prod(window(t, S[1] + 1, S[2]) for t in range(3) if t != i)
            exact -= window(i, 0, S[0]) * others

    b_f, c_f, m = regime.b, float(regime.c), regime.m
    total = sum(p)
    lead = (c_f * m + (S[-1] + 1) * b_f) ** (total + l)
    for v in p:
        lead /= v + 1
    asymptotic = lead * (1.0 + (total + l) / (2 * (b_f + c_f) * m))
    return exact, asymptotic
