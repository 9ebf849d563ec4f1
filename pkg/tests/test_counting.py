"""Prescribed-coordinate counts, composition sums, and exact moments."""

from fractions import Fraction

import pytest

from parkfn.compositions import compositions, constrained_compositions, multinomial
from parkfn.core import ABParams, UVector, enumerate_pf
from parkfn.counting import (
    count_pf_composition,
    count_prescribed,
    count_run_prescribed,
    exact_joint_moment,
    exact_moment,
    first_coord_distribution,
    prescribed_pair_count,
)
from parkfn.goncarov import count_pf, count_pf_ab


def test_composition_engine():
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(compositions(0, 0)) == [()]
    assert multinomial(4, (2, 1, 1)) == 12
    # the u=(2,5) segment sum runs over exactly 7 feasible compositions
    feasible = list(constrained_compositions(2, 4, [0, 1, 0, 2]))
    assert len(feasible) == 7


def test_count_prescribed_examples():
    assert count_prescribed(UVector((2, 5)), (1,)) == 5
    assert count_prescribed(UVector((2, 5)), (5,)) == 2
    u = UVector((2, 3, 5, 8))
    brute = sum(1 for pi in enumerate_pf(u) if pi[:3] == (1, 1, 1))
    assert count_prescribed(u, (1, 1, 1)) == brute


def test_count_prescribed_validation():
    u = UVector((2, 5))
    with pytest.raises(ValueError):
        count_prescribed(u, ())
    with pytest.raises(ValueError):
        count_prescribed(u, (3, 1))  # not non-decreasing
    assert count_prescribed(u, (6,)) == 0  # beyond u_m: impossible


def test_count_prescribed_monotone_in_w():
    u = UVector((2, 3, 5, 8))
    values = [count_prescribed(u, (w,)) for w in range(1, 9)]
    assert values[0] == values[1]  # constant while w <= u_1
    assert all(x >= y for x, y in zip(values, values[1:]))


def test_count_pf_composition_examples():
    assert count_pf_composition(UVector((2, 5))) == 16
    assert count_pf_composition(UVector((2, 3))) == 8
    for m in (1, 2, 3, 4, 5):
        u = UVector(tuple(range(1, m + 1)))
        assert count_pf_composition(u) == (m + 1) ** (m - 1)


def test_count_run_prescribed_examples():
    p = ABParams(2, 1, 2)
    assert count_run_prescribed(p, 1, 0) == 3
    assert count_run_prescribed(p, 2, 0) == 1


def test_count_run_prescribed_brute_grid():
    for a in (1, 2, 3):
        for b in (1, 2):
            for m in (2, 3):
                p = ABParams(a, b, m)
                pfs = list(enumerate_pf(p.uvector))
                for l in range(1, m + 1):
                    for k in range(m - l + 1):
                        run = tuple(a + (k + i) * b for i in range(l))
                        want = sum(1 for pi in pfs if pi[:l] == run)
                        assert count_run_prescribed(p, l, k) == want, (a, b, m, l, k)


def test_first_coord_distribution_example():
    d = first_coord_distribution(ABParams(2, 1, 2))
    assert d.counts == (3, 3, 2)
    assert d.prob(1) == Fraction(3, 8)
    assert d.count(4) == 0


def test_first_coord_boundary_value():
    # the count at the top value collapses to a(a+(m-1)b)^{m-2}
    for a, b, m in ((2, 1, 4), (3, 2, 5), (2, 3, 3)):
        d = first_coord_distribution(ABParams(a, b, m))
        assert d.count(a + (m - 1) * b) == a * (a + (m - 1) * b) ** (m - 2)


def test_first_coord_marginal_and_shape():
    for a, b, m in ((1, 1, 3), (2, 2, 4), (3, 1, 4)):
        p = ABParams(a, b, m)
        d = first_coord_distribution(p)
        assert sum(d.counts) == count_pf_ab(a, b, m)
        assert len(set(d.counts[:a])) == 1  # flat on [1, a]
        tail = d.counts[a - 1 :]
        assert all(x >= y for x, y in zip(tail, tail[1:]))
        pfs = list(enumerate_pf(p.uvector))
        for j in range(1, p.max_pref + 1):
            assert d.count(j) == sum(1 for pi in pfs if pi[0] == j)


def test_exact_moment_examples():
    p = ABParams(2, 1, 2)
    assert exact_moment(p, 1) == Fraction(15, 8)
    assert exact_moment(p, 0) == 1
    p2 = ABParams(2, 2, 3)  # the c=0 scaling at m=3
    pfs = list(enumerate_pf(p2.uvector))
    want = Fraction(sum(pi[0] for pi in pfs), len(pfs))
    assert exact_moment(p2, 1) == want


def test_exact_joint_moment_examples():
    p = ABParams(2, 1, 2)
    # enumeration oracle gives sum jk = 27 over the 8 pairs
    pfs = list(enumerate_pf(p.uvector))
    want = Fraction(sum(pi[0] * pi[1] for pi in pfs), len(pfs))
    assert want == Fraction(27, 8)
    assert exact_joint_moment(p, 1, 1) == want
    p3 = ABParams(3, 2, 3)
    pfs3 = list(enumerate_pf(p3.uvector))
    want3 = Fraction(sum(pi[0] * pi[1] for pi in pfs3), len(pfs3))
    assert exact_joint_moment(p3, 1, 1) == want3


def test_exact_joint_moment_symmetry():
    p = ABParams(3, 2, 4)
    assert exact_joint_moment(p, 2, 1) == exact_joint_moment(p, 1, 2)


def test_exact_joint_moment_brute_grid():
    for a, b, m in ((1, 1, 3), (2, 1, 4), (2, 2, 3), (3, 2, 2)):
        p = ABParams(a, b, m)
        pfs = list(enumerate_pf(p.uvector))
        n = len(pfs)
        for pe, qe in ((1, 1), (2, 1), (2, 2)):
            want = Fraction(sum(pi[0] ** pe * pi[1] ** qe for pi in pfs), n)
            assert exact_joint_moment(p, pe, qe) == want, (a, b, m, pe, qe)


def test_prescribed_pair_count_brute():
    p = ABParams(2, 2, 4)
    a, b, m = p.a, p.b, p.m
    pfs = list(enumerate_pf(p.uvector))
    for s1 in range(m):
        for s2 in range(s1, m):
            if s1 == s2 and s1 > m - 2:
                continue
            j = a + s1 * b
            k = a + s2 * b if s1 < s2 else a + (s1 + 1) * b
            want = sum(1 for pi in pfs if pi[0] == j and pi[1] == k)
            assert prescribed_pair_count(p, s1, s2) == want, (s1, s2)


def test_moment_block_consistency():
    # within one threshold block the prescribed count is constant, so the
    # moment computed blockwise matches the valuewise sum
    p = ABParams(3, 2, 3)
    d = first_coord_distribution(p)
    total = count_pf_ab(p.a, p.b, p.m)
    want = Fraction(sum(j**2 * d.count(j) for j in range(1, p.max_pref + 1)), total)
    assert exact_moment(p, 2) == want
