"""Abel's multinomial sums A_n(x; p) over exact rationals.

A_n(x_1..x_m; p_1..p_m) sums multinomial(n; s) * prod (x_j+s_j)^{s_j+p_j}
over weak compositions s of n.  Negative exponents are welcome as long as no
term hits a zero base; the two classical closed forms (all p_j = -1, and all
-1 with a trailing 0) are provided for cross-checking.  The symmetry and
convolution recurrences are exercised as property tests, not reimplemented
as evaluation paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .compositions import compositions, multinomial


@dataclass(frozen=True)
class AbelSpec:
    """Arguments of one Abel multinomial sum."""

    x: tuple[Fraction, ...]
    p: tuple[int, ...]
    n: int

    def __init__(self, x: Sequence, p: Sequence[int], n: int):
        x = tuple(Fraction(v) for v in x)
        p = tuple(int(v) for v in p)
        if len(x) != len(p):
            raise ValueError(f"need matching lengths, got {len(x)} bases and {len(p)} offsets")
        if len(x) == 0:
            raise ValueError("need at least one variable")
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", int(n))

    @property
    def m(self) -> int:
        return len(self.x)


def abel_multinomial(spec: AbelSpec) -> Fraction:
    """Evaluate A_n(x; p) by direct summation over compositions."""
    total = Fraction(0)
    for s in compositions(spec.n, spec.m):
        term = Fraction(multinomial(spec.n, s))
        for xj, sj, pj in zip(spec.x, s, spec.p):
            base = xj + sj
            exponent = sj + pj
            if base == 0 and exponent < 0:
                raise ValueError(
                    f"undefined term at composition {s}: base x_j+s_j = 0 "
                    f"with negative exponent {exponent}"
                )
            term *= base**exponent
        total += term
    return total


def abel_special(x: Sequence, n: int, variant: str) -> Fraction:
    """Closed forms of the two special offset patterns.

    ``all_minus_one``: A_n(x; -1,...,-1) = (sum x)(sum x + n)^{n-1} / prod x.
    ``last_zero``:     A_n(x; -1,...,-1,0) = x_m (sum x + n)^n / prod x.
    """
    x = tuple(Fraction(v) for v in x)
    if not x:
        raise ValueError("need at least one variable")
    if any(v == 0 for v in x):
        raise ValueError(f"all x_j must be nonzero, got {x}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    product = Fraction(1)
    for v in x:
        product *= v
    total = sum(x, Fraction(0))
    if variant == "all_minus_one":
        return (total + n) ** (n - 1) * total / product
    if variant == "last_zero":
        return (total + n) ** n * x[-1] / product
    raise ValueError(f"unknown variant {variant!r}")
