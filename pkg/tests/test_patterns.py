from itertools import product

import pytest
from hypothesis import given, strategies as st

from trihom.patterns import (EXIT_CLASSES, ExitMap, Parity, ParityViolation, PatternSyntaxError,
                             SingularityPattern, autonomous_feasibility, canonical, classify_parity,
                             enumerate_exit_classes, enumerate_patterns, enumerate_quartets, iter_all_patterns,
                             make_pattern, multiset_feasibility, parse_pattern, symmetry_images)

EVEN_LIST = [(10, 2, 2, 2), (8, 4, 2, 2), (6, 6, 2, 2), (6, 4, 4, 2), (4, 4, 4, 4)]
ODD_LIST = [(13, 1, 1, 1), (11, 3, 1, 1), (9, 5, 1, 1), (9, 3, 3, 1), (7, 7, 1, 1), (7, 5, 3, 1), (7, 3, 3, 3),
            (5, 5, 5, 1), (5, 5, 3, 3)]
MIXED_LIST = [(12, 2, 1, 1), (11, 2, 2, 1), (10, 4, 1, 1), (10, 3, 2, 1), (9, 4, 2, 1), (9, 3, 2, 2), (8, 6, 1, 1),
              (8, 5, 2, 1), (8, 4, 3, 1), (8, 3, 3, 2), (7, 6, 2, 1), (7, 5, 2, 2), (7, 4, 4, 1), (7, 4, 3, 2),
              (6, 6, 3, 1), (6, 5, 4, 1), (6, 5, 3, 2), (6, 4, 3, 3), (5, 5, 4, 2), (5, 4, 4, 3)]


def brute_compositions():
    return [q for q in product(range(1, 17), repeat=4) if sum(q) == 16]


def test_ordered_count_matches_brute_force():
    assert sorted(q.steps for q in enumerate_quartets(True)) == sorted(brute_compositions())
    assert len(enumerate_quartets(True)) == 455


def test_multisets_partition_by_parity():
    ms = enumerate_quartets(False)
    assert len(ms) == len({tuple(sorted(q, reverse=True)) for q in brute_compositions()}) == 34
    by = {p: [q.steps for q in ms if classify_parity(q) == p] for p in Parity}
    assert by[Parity.EVEN] == EVEN_LIST
    assert by[Parity.ODD] == ODD_LIST
    assert by[Parity.MIXED] == MIXED_LIST


@pytest.mark.parametrize("q, want", [((10, 2, 2, 2), Parity.EVEN), ((13, 1, 1, 1), Parity.ODD),
                                     ((12, 2, 1, 1), Parity.MIXED)])
def test_classify(q, want):
    assert classify_parity(q) == want


@pytest.mark.parametrize("parity, n", [("even", 3), ("odd", 2), ("mixed", 3)])
def test_exit_class_counts(parity, n):
    assert len(enumerate_exit_classes(parity)) == n


def test_exit_class_words():
    assert EXIT_CLASSES[Parity.ODD][0].assignment == {"A": "C", "B": "D", "C": "A", "D": "B"}
    assert EXIT_CLASSES[Parity.MIXED][2].assignment == {"A": "C", "B": "A", "C": "D", "D": "B"}


def _feasible_multisets(parity, klass):
    return [q.steps for q in enumerate_quartets(False)
            if classify_parity(q) == Parity(parity) and multiset_feasibility(parity, klass, q.steps)[0]]


def test_even_class1_filter():
    assert _feasible_multisets("even", 1) == [(6, 6, 2, 2), (6, 4, 4, 2), (4, 4, 4, 4)]
    assert not autonomous_feasibility(make_pattern("even", 1, (10, 2, 2, 2)))
    assert not autonomous_feasibility(make_pattern("even", 1, (8, 2, 4, 2)))


def test_odd_class1_filter():
    assert _feasible_multisets("odd", 1) == [(7, 7, 1, 1), (7, 5, 3, 1), (5, 5, 3, 3)]
    assert autonomous_feasibility(make_pattern("odd", 1, (7, 7, 1, 1)))
    assert _feasible_multisets("odd", 2) == ODD_LIST


def test_mixed_filters():
    assert _feasible_multisets("mixed", 1) == MIXED_LIST
    assert len(_feasible_multisets("mixed", 2)) == 9
    assert _feasible_multisets("mixed", 3) == [(7, 4, 4, 1), (5, 4, 4, 3)]
    for q in _feasible_multisets("mixed", 2):
        assert 4 in q


def test_infeasible_reason():
    f = autonomous_feasibility(make_pattern("mixed", 2, (7, 2, 5, 2)))
    assert not f and "N=4" in f.reason


def test_parity_violation():
    with pytest.raises(ParityViolation):
        SingularityPattern(ExitMap("CDAB"), (7, 6, 2, 1))


@pytest.mark.parametrize("text", ["odd.c2.9-1-5-1", "AllOdd class2 {9,1,5,1}", "odd.cii.9-1-5-1"])
def test_parse_pattern(text):
    p = parse_pattern(text)
    assert p.id == "odd.c2.9-1-5-1" and p.listing() == "AllOdd class2 {9,1,5,1}"


@pytest.mark.parametrize("text", ["odd.c3.7-7-1-1", "even.c1.7-7-1-1", "nonsense", "odd.c1.7-7-1-2"])
def test_parse_errors(text):
    with pytest.raises(PatternSyntaxError):
        parse_pattern(text)


def test_reversal_symmetry_example():
    # {7,1,1,7} and {7,1,7,1} in the second odd class are the same pattern
    a, b = make_pattern("odd", 2, (7, 1, 1, 7)), make_pattern("odd", 2, (7, 1, 7, 1))
    assert b in symmetry_images(a) and canonical(a) == canonical(b)


def test_dedup_reduces():
    full = enumerate_patterns(dedup=False)
    reps = enumerate_patterns()
    assert len(full) == len(list(iter_all_patterns()))
    assert len(reps) < len(full)
    assert {canonical(p) for p in full} == set(reps)


@given(st.sampled_from(list(iter_all_patterns())))
def test_symmetry_is_a_group_action(p):
    imgs = symmetry_images(p)
    assert p in imgs
    for q in imgs:
        assert set(symmetry_images(q)) == set(imgs)
        assert sorted(q.steps) == sorted(p.steps)
        assert autonomous_feasibility(q).feasible == autonomous_feasibility(p).feasible
