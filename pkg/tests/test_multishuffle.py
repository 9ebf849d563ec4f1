"""Maximal compatible vectors and multi-shuffle decomposition."""

import itertools
import random

import pytest

from parkfn.core import UVector, check_u_parking
from parkfn.multishuffle import (
    DecompositionError,
    compose,
    decompose,
    is_multishuffle,
    maximal_v,
)


def test_maximal_v_examples():
    v, k = maximal_v(UVector((2, 3, 5, 8)), (6, 2))
    assert v == (3, 5) and k == (1, 2)
    v, k = maximal_v(UVector((3, 4, 5, 6, 7, 8, 9, 10)), (2, 7, 2, 9, 10, 1))
    assert v == (6, 8) and k == (3, 5)
    assert maximal_v(UVector((1, 2, 3)), (3, 3)) is None


def test_maximal_v_empty_suffix():
    u = UVector((2, 4, 7))
    v, k = maximal_v(u, ())
    assert v == (2, 4, 7) and k == (0, 1, 2)


def test_decompose_examples():
    u = UVector((2, 4, 5, 6, 8, 12, 15))
    parts = decompose(u, (4, 8), (11, 13, 5, 1, 6))
    # window words keep the suffix's left-to-right order, so the third word
    # reads (11, 13) -> (3, 5)
    assert parts.components == ((1,), (1, 2), (3, 5))
    assert parts.k == (1, 4)

    u2 = UVector((3, 4, 5, 6, 7, 8, 9, 10))
    parts2 = decompose(u2, (6, 8), (2, 7, 2, 9, 10, 1))
    assert parts2.components == ((2, 2, 1), (1,), (1, 2))


def test_decompose_adjacent_indices_give_empty_word():
    u = UVector((2, 3, 5, 8))
    parts = decompose(u, (3, 5), (6, 2))
    assert parts.components == ((2,), (), (1,))


def test_decompose_errors_name_window():
    u = UVector((2, 3, 5, 8))
    with pytest.raises(DecompositionError):
        decompose(u, (2, 5), (6, 2))  # suffix entry 2 equals v_1
    with pytest.raises(DecompositionError) as info:
        decompose(u, (3, 8), (7, 2))  # 7 lands in window 2 but cannot park there
    assert info.value.window == 1
    with pytest.raises(DecompositionError):
        decompose(u, (4, 5), (6, 2))  # 4 is not a threshold


def test_compose_inverts_decompose():
    u = UVector((2, 4, 5, 6, 8, 12, 15))
    suffix = (11, 13, 5, 1, 6)
    parts = decompose(u, (4, 8), suffix)
    assert compose(u, (4, 8), parts.components, parts.interleaving) == suffix


def test_compose_edge_cases():
    # all components empty (l = m)
    u = UVector((2, 3))
    assert compose(u, (2, 3), ((), (), ()), ()) == ()
    # no shuffle points (l = 0): the suffix is the single component
    u = UVector((2, 5))
    assert compose(u, (), ((1, 4),), (0, 0)) == (1, 4)
    assert decompose(u, (), (1, 4)).components == ((1, 4),)


def test_compose_validates():
    u = UVector((2, 3, 5, 8))
    with pytest.raises(ValueError):
        compose(u, (3, 5), ((2,), (), (1,)), (0, 0, 2))  # multiplicity mismatch
    with pytest.raises(ValueError):
        compose(u, (3, 5), ((2, 2), (), (1,)), (0, 0, 2))  # word too long
    with pytest.raises(ValueError):
        compose(u, (3, 5), ((3,), (), (1,)), (0, 2))  # word not a parking function


def test_is_multishuffle_examples():
    u = UVector((2, 3, 5, 8))
    assert is_multishuffle(u, (3, 5), (6, 2)) is True
    # (2,5,6,2) does park, but (2,5) is not the maximal prefix
    assert check_u_parking(u, (2, 5, 6, 2))
    assert is_multishuffle(u, (2, 5), (6, 2)) is False
    assert is_multishuffle(u, (4, 5), (6, 2)) is False  # 4 not a threshold


def brute_compatible_prefixes(u, suffix, l):
    top = u[len(u) - 1]
    return {
        w
        for w in itertools.combinations_with_replacement(range(1, top + 1), l)
        if check_u_parking(u, w + tuple(suffix))
    }


@pytest.mark.parametrize("ut", [(2, 3), (1, 3, 4), (2, 3, 5), (2, 4, 5, 6)])
def test_main_equivalence_small_grid(ut):
    """maximal_v and multi-shuffle membership agree with brute force."""
    u = UVector(ut)
    m = len(ut)
    for l in range(1, m + 1):
        for suffix in itertools.product(range(1, ut[-1] + 1), repeat=m - l):
            found = maximal_v(u, suffix)
            compatible = brute_compatible_prefixes(u, suffix, l)
            if found is None:
                assert not compatible
                continue
            v, k = found
            assert all(u[i] == value for i, value in zip(k, v))
            assert v in compatible
            # the found v dominates every compatible prefix: order ideal [v]
            assert compatible == {
                w
                for w in itertools.combinations_with_replacement(range(1, ut[-1] + 1), l)
                if all(w[i] <= v[i] for i in range(l))
            }
            # shuffle membership holds exactly at the maximal v
            for indices in itertools.combinations(range(m), l):
                candidate = tuple(ut[i] for i in indices)
                assert is_multishuffle(u, candidate, suffix) == (candidate == v)


def test_no_suffix_entry_equals_v():
    rnd = random.Random(4)
    u = UVector((2, 4, 5, 7, 9))
    for _ in range(300):
        suffix = tuple(rnd.randint(1, 9) for _ in range(rnd.randint(0, 4)))
        found = maximal_v(u, suffix)
        if found is not None:
            v, k = found
            assert all(i < j for i, j in zip(k, k[1:]))
            assert not set(v) & set(suffix)


def test_round_trip_random():
    rnd = random.Random(11)
    u = UVector((2, 4, 5, 6, 8, 12, 15))
    for _ in range(300):
        suffix = tuple(rnd.randint(1, 15) for _ in range(rnd.randint(0, 6)))
        found = maximal_v(u, suffix)
        if found is None:
            continue
        v, _ = found
        parts = decompose(u, v, suffix)
        assert compose(u, v, parts.components, parts.interleaving) == suffix
