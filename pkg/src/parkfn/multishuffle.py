"""Multi-shuffle decomposition of u-parking-function suffixes.

Fixing the last m-l preferences of a u-parking function, the set of
compatible l-prefixes is either empty or the order ideal below a unique
maximal vector v whose entries are thresholds u_{k_1} < ... < u_{k_l}.  The
suffix is then an interleaving of l+1 smaller parking functions living on
the threshold windows that v cuts out.  ``maximal_v`` finds v greedily;
``decompose``/``compose`` move between a suffix and its component words; the
equivalence of the two views is tested exhaustively at small scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import UVector, check_u_parking


class DecompositionError(ValueError):
    """A suffix fails to split into parking-function words for the given v."""

    def __init__(self, message: str, window: int | None = None):
        super().__init__(message)
        self.window = window


@dataclass(frozen=True)
class ShuffleDecomposition:
    """Suffix split into l+1 window words.

    ``k`` holds the 0-based positions of the cut thresholds in u, so
    v[j] == u[k[j]].  ``components[j]`` is the word of window j shifted down
    to start at 1; ``interleaving[t]`` names the window (0..l) that suffix
    position t draws from, which makes composition the exact inverse of
    decomposition.
    """

    v: tuple[int, ...]
    k: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    interleaving: tuple[int, ...]


def maximal_v(u: UVector, suffix: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Greedy search for the maximal prefix vector compatible with ``suffix``.

    Sorts the suffix and assigns each entry the lowest unused threshold that
    can hold it; the l thresholds left over form v (returned with their
    0-based indices).  Returns None when the assignment fails, i.e. the
    suffix extends to no u-parking function at all.
    """
    m = len(u)
    suffix = tuple(int(x) for x in suffix)
    l = m - len(suffix)
    if not 1 <= l <= m:
        raise ValueError(f"suffix length {len(suffix)} leaves no prefix in a length-{m} problem")
    if any(x < 1 for x in suffix):
        raise ValueError(f"preferences must be positive integers, got {suffix}")
    used = []
    prev = -1  # 0-based: next index must exceed prev
    for value in sorted(suffix):
        idx = prev + 1
        while idx < m and u[idx] < value:
            idx += 1
        if idx >= m:
            return None
        used.append(idx)
        prev = idx
    used_set = set(used)
    k = tuple(i for i in range(m) if i not in used_set)
    v = tuple(u[i] for i in k)
    return v, k


def _indices_of_v(u: UVector, v: Sequence[int]) -> tuple[int, ...]:
    """Map v values back to their positions in u; v must be increasing thresholds."""
    v = tuple(int(x) for x in v)
    positions = {value: i for i, value in enumerate(u)}
    k = []
    for j, value in enumerate(v):
        if value not in positions:
            raise DecompositionError(f"v_{j + 1}={value} is not a threshold of u")
        k.append(positions[value])
    for a, b in zip(k, k[1:]):
        if a >= b:
            raise DecompositionError(f"v must be strictly increasing along u, got {v}")
    return tuple(k)


def _window_thresholds(u: UVector, k: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Shifted threshold vectors of the l+1 windows cut by the indices k."""
    m = len(u)
    bounds = [-1, *k, m]  # window j spans u-indices (bounds[j], bounds[j+1]) exclusive
    windows = []
    for j in range(len(k) + 1):
        lo, hi = bounds[j], bounds[j + 1]
        base = 0 if lo < 0 else u[lo]
        windows.append(tuple(u[i] - base for i in range(lo + 1, hi)))
    return windows


def decompose(u: UVector, v: Sequence[int], suffix: Sequence[int]) -> ShuffleDecomposition:
    """Split ``suffix`` into the l+1 window words determined by v.

    Entries are routed to windows by strict value comparison; an entry equal
    to some v_j or a window word that is not a parking function of its
    shifted thresholds raises DecompositionError naming the window.  Ties
    keep their left-to-right suffix order, so decompose/compose round-trip.
    """
    suffix = tuple(int(x) for x in suffix)
    if any(x < 1 for x in suffix):
        raise ValueError(f"preferences must be positive integers, got {suffix}")
    k = _indices_of_v(u, v)
    l = len(k)
    if len(suffix) != len(u) - l:
        raise ValueError(
            f"suffix length {len(suffix)} does not match m-l = {len(u) - l}"
        )
    cuts = [u[i] for i in k]
    words: list[list[int]] = [[] for _ in range(l + 1)]
    tags = []
    for x in suffix:
        j = 0
        while j < l and x > cuts[j]:
            j += 1
        if j < l and x == cuts[j]:
            raise DecompositionError(
                f"suffix entry {x} equals v_{j + 1}; not a multi-shuffle", window=j
            )
        base = cuts[j - 1] if j > 0 else 0
        words[j].append(x - base)
        tags.append(j)
    windows = _window_thresholds(u, k)
    components = []
    for j, (word, thresholds) in enumerate(zip(words, windows)):
        if len(word) != len(thresholds):
            raise DecompositionError(
                f"window {j + 1} holds {len(word)} entries but has {len(thresholds)} slots",
                window=j,
            )
        if thresholds and not check_u_parking(UVector(thresholds), word):
            raise DecompositionError(
                f"window {j + 1} word {tuple(word)} is not a parking function of {thresholds}",
                window=j,
            )
        components.append(tuple(word))
    return ShuffleDecomposition(tuple(int(x) for x in v), k, tuple(components), tuple(tags))


def compose(
    u: UVector,
    v: Sequence[int],
    components: Sequence[Sequence[int]],
    interleaving: Sequence[int],
) -> tuple[int, ...]:
    """Interleave shifted window words back into a suffix.

    ``interleaving`` lists, per suffix position, the window index the entry
    comes from; it must use each window exactly as often as its word is
    long.  Inverse of ``decompose`` for its recorded interleaving.
    """
    k = _indices_of_v(u, v)
    l = len(k)
    if len(components) != l + 1:
        raise ValueError(f"expected {l + 1} components, got {len(components)}")
    windows = _window_thresholds(u, k)
    for j, (word, thresholds) in enumerate(zip(components, windows)):
        if len(word) != len(thresholds):
            raise ValueError(
                f"component {j + 1} has {len(word)} entries for a {len(thresholds)}-slot window"
            )
        if thresholds and not check_u_parking(UVector(thresholds), word):
            raise ValueError(
                f"component {j + 1} = {tuple(word)} is not a parking function of {thresholds}"
            )
    counts = [0] * (l + 1)
    for tag in interleaving:
        if not 0 <= tag <= l:
            raise ValueError(f"interleaving tag {tag} outside 0..{l}")
        counts[tag] += 1
    if counts != [len(word) for word in components]:
        raise ValueError("interleaving multiplicities do not match component lengths")
    bases = [0, *(u[i] for i in k)]
    cursor = [0] * (l + 1)
    out = []
    for tag in interleaving:
        word = components[tag]
        out.append(word[cursor[tag]] + bases[tag])
        cursor[tag] += 1
    return tuple(out)


def is_multishuffle(u: UVector, v: Sequence[int], suffix: Sequence[int]) -> bool:
    """Whether ``suffix`` decomposes as a multi-shuffle over the cut vector v."""
    try:
        decompose(u, v, suffix)
    except DecompositionError:
        return False
    return True
