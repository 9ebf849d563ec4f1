"""Weak-composition generators shared by the counting and Abel-sum modules."""

from __future__ import annotations

from math import factorial
from typing import Iterator, Sequence


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All weak compositions of n into ``parts`` nonnegative parts."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first, *rest)


def constrained_compositions(
    n: int, parts: int, min_prefix: Sequence[int]
) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n whose prefix sums clear per-position floors.

    ``min_prefix[t]`` is the least allowed value of s_1+...+s_{t+1}; floors
    are checked incrementally so infeasible branches are pruned early.
    """
    if len(min_prefix) != parts:
        raise ValueError("need one prefix floor per part")
    floors = [max(f, 0) for f in min_prefix]

    def rec(t: int, remaining: int, prefix: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if t == parts - 1:
            if prefix + remaining >= floors[t]:
                yield (*acc, remaining)
            return
        low = max(0, floors[t] - prefix)
        for s in range(low, remaining + 1):
            yield from rec(t + 1, remaining - s, prefix + s, acc + [s])

    yield from rec(0, n, 0, [])


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / prod(parts_i!) with sum(parts) == n."""
    if sum(parts) != n:
        raise ValueError(f"parts {parts} do not sum to {n}")
    out = factorial(n)
    for s in parts:
        out //= factorial(s)
    return out
