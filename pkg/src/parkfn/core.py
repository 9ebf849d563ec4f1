"""Core domain types and the brute-force machinery for u-parking functions.

A threshold vector u = (u_1 < ... < u_m) defines the set PF(u) of preference
sequences whose non-decreasing rearrangement stays below u componentwise.
The arithmetic family u_i = a + (i-1)b is frequent enough to get its own
parameter type.  Everything here is exact integer arithmetic; validity of a
preference sequence is a predicate, never a type constraint, so counting
invalid configurations is possible.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence


DEFAULT_ENUMERATION_BUDGET = 10**8
BUDGET_ENV_VAR = "PARKFN_BUDGET"


class BudgetExceededError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its candidate budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration needs {required} candidates, budget is {budget} "
            f"(raise via {BUDGET_ENV_VAR} or the budget argument)"
        )
        self.required = required
        self.budget = budget


class InternalInvariantError(RuntimeError):
    """An internal arithmetic or algorithmic invariant failed; indicates a bug."""


@dataclass(frozen=True)
class UVector:
    """Strictly increasing positive thresholds u_1 < ... < u_m."""

    u: tuple[int, ...]

    def __init__(self, u: Sequence[int]):
        u = tuple(int(x) for x in u)
        if len(u) == 0:
            raise ValueError("threshold vector must have length >= 1")
        if u[0] < 1:
            raise ValueError(f"thresholds must be positive, got u_1={u[0]}")
        for i in range(len(u) - 1):
            if u[i] >= u[i + 1]:
                raise ValueError(f"thresholds must be strictly increasing, got {u}")
        object.__setattr__(self, "u", u)

    @property
    def m(self) -> int:
        return len(self.u)

    def __len__(self) -> int:
        return len(self.u)

    def __getitem__(self, i: int) -> int:
        return self.u[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.u)


@dataclass(frozen=True)
class ABParams:
    """Arithmetic thresholds u_i = a + (i-1)b for m cars.

    The optional rate c records the scaling a = c*m + b used by the
    asymptotic regime; it is validated but not otherwise consulted by exact
    computations.
    """

    a: int
    b: int
    m: int
    c: Fraction | None = field(default=None)

    def __post_init__(self):
        if self.a < 1 or self.b < 1 or self.m < 1:
            raise ValueError(f"a, b, m must be positive, got a={self.a} b={self.b} m={self.m}")
        if self.c is not None:
            c = Fraction(self.c)
            if c < 0:
                raise ValueError(f"c must be nonnegative, got {c}")
            if c * self.m + self.b != self.a:
                raise ValueError(
                    f"inconsistent arithmetic regime: a={self.a} != c*m+b={c * self.m + self.b}"
                )
            object.__setattr__(self, "c", c)

    @classmethod
    def from_rate(cls, b: int, c, m: int) -> "ABParams":
        """Build parameters from the scaling a = c*m + b; c*m must be integral."""
        c = Fraction(c)
        a = c * m + b
        if a.denominator != 1:
            raise ValueError(f"c*m+b = {a} is not an integer; pick c with c*m integral")
        return cls(int(a), b, m, c)

    @property
    def uvector(self) -> UVector:
        return UVector(tuple(self.a + i * self.b for i in range(self.m)))

    @property
    def max_pref(self) -> int:
        """Largest value a coordinate of a parking function can take, a+(m-1)b."""
        return self.a + (self.m - 1) * self.b


@dataclass(frozen=True)
class ParkingOutcome:
    """Result of driving the cars of a preference sequence down the street.

    ``spots`` records where each car ends up on the street of u_m spots in
    which only positions u_1..u_m start empty (0 marks a car that never
    parked).  ``empty_positions`` are the u_m - m street positions never
    attempted when the same preferences run on a fully empty street of u_m
    spots; they are only populated on success (they drive the segment
    decomposition behind the composition-sum count).
    """

    spots: tuple[int, ...]
    success: bool
    empty_positions: frozenset[int]


def _as_pref_tuple(pi: Sequence[int]) -> tuple[int, ...]:
    pi = tuple(int(x) for x in pi)
    if any(x < 1 for x in pi):
        raise ValueError(f"preferences must be positive integers, got {pi}")
    return pi


def check_u_parking(u: UVector, pi: Sequence[int]) -> bool:
    """Membership test: sorted(pi)_i <= u_i for every i."""
    pi = _as_pref_tuple(pi)
    if len(pi) != len(u):
        raise ValueError(f"length mismatch: {len(pi)} preferences vs {len(u)} thresholds")
    lam = sorted(pi)
    return all(lam[i] <= u[i] for i in range(len(u)))


def park(u: UVector, pi: Sequence[int]) -> ParkingOutcome:
    """Simulate the one-way street with only positions u_1..u_m empty.

    Car i parks at the smallest still-empty position >= pi_i; success means
    every car parks.  Equivalence with ``check_u_parking`` is a tested
    property of the construction, not an assumption made here.
    """
    pi = _as_pref_tuple(pi)
    if len(pi) != len(u):
        raise ValueError(f"length mismatch: {len(pi)} preferences vs {len(u)} thresholds")
    free = sorted(u.u)
    spots = []
    success = True
    for p in pi:
        # smallest empty position >= p; free is kept sorted
        taken = 0
        for idx, pos in enumerate(free):
            if pos >= p:
                taken = pos
                del free[idx]
                break
        spots.append(taken)
        if taken == 0:
            success = False
    empty = frozenset()
    if success:
        empty = _never_attempted(u.u[-1], pi)
    return ParkingOutcome(tuple(spots), success, empty)


def _never_attempted(n_spots: int, pi: tuple[int, ...]) -> frozenset[int]:
    """Spots left empty by the classical parking process on a street of n_spots."""
    occupied = [False] * (n_spots + 1)
    for p in pi:
        q = p
        while q <= n_spots and occupied[q]:
            q += 1
        if q > n_spots:
            return frozenset()  # classical process failed; no decomposition
        occupied[q] = True
    return frozenset(j for j in range(1, n_spots + 1) if not occupied[j])


def displacement(p: ABParams, pi: Sequence[int]) -> int:
    """Total extra driving b*C(m,2) + a*m - sum(pi) of a valid parking function."""
    pi = _as_pref_tuple(pi)
    if not check_u_parking(p.uvector, pi):
        raise ValueError(f"{pi} is not an (a,b)-parking function for a={p.a} b={p.b} m={p.m}")
    m = p.m
    return p.b * (m * (m - 1) // 2) + p.a * m - sum(pi)


def enumeration_budget() -> int:
    """Current candidate budget, overridable via the PARKFN_BUDGET env var."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc


def enumerate_pf(u: UVector, budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every parking function in [u_m]^m in lexicographic order.

    This is the ground-truth oracle the closed-form counts are tested
    against.  Refuses to start when u_m^m exceeds the budget; the
    deterministic failure names the budget that would be needed.
    """
    if budget is None:
        budget = enumeration_budget()
    m = len(u)
    top = u[m - 1]
    required = top**m
    if required > budget:
        raise BudgetExceededError(required, budget)
    for pi in itertools.product(range(1, top + 1), repeat=m):
        if check_u_parking(u, pi):
            yield pi


def count_pf_brute(u: UVector, budget: int | None = None) -> int:
    """Cardinality of PF(u) by exhaustive enumeration."""
    return sum(1 for _ in enumerate_pf(u, budget=budget))
