import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import posets
from poset_assoc.canonical import (are_isomorphic, enumerate_posets, from_code, poset_code,
                                   poset_codes, random_connected_poset, random_disconnected_poset)
from poset_assoc.census import candidates, census_compare, has_nontrivial_upper_bundle, search
from poset_assoc.generators import bundle_over, zigzag
from poset_assoc.poset import Poset
from poset_assoc.tubing import face_poset

# unlabelled posets (OEIS A000112), connected ones (A000608), and those with
# no chain of three elements
ALL = [1, 1, 2, 5, 16, 63, 318, 2045]
CONNECTED = [0, 1, 1, 3, 10, 44, 238, 1650]
HEIGHT_AT_MOST_2 = [1, 1, 2, 4, 9, 21, 56, 164, 557]


@pytest.mark.parametrize("n", range(1, 8))
def test_poset_counts(n):
    assert len(poset_codes(n)) == ALL[n]


@pytest.mark.parametrize("n", range(1, 8))
def test_connected_counts(n):
    assert len(enumerate_posets(n, connected=True)) == CONNECTED[n]


@pytest.mark.parametrize("n", range(1, 9))
def test_height_two_counts(n):
    assert len(poset_codes(n, max_rank=2)) == HEIGHT_AT_MOST_2[n]


@given(posets(max_size=7), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_code_is_relabel_invariant(P, rnd):
    names = list(P.elements)
    new = [f"z{i}" for i in range(len(names))]
    rnd.shuffle(new)
    Q = P.relabel(dict(zip(names, new)))
    assert poset_code(Q) == poset_code(P)
    assert are_isomorphic(from_code(poset_code(P)), P)


def test_non_isomorphic_distinguished():
    a = Poset("abcd", [("a", "c"), ("b", "c"), ("b", "d")])
    b = Poset("abcd", [("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])
    assert not are_isomorphic(a, b)
    assert not are_isomorphic(a, Poset("abc"))


def test_random_generators_are_seeded():
    r1, r2 = random.Random(3), random.Random(3)
    assert random_connected_poset(6, r1).to_dict() == random_connected_poset(6, r2).to_dict()
    for _ in range(20):
        P = random_disconnected_poset(8, r1)
        assert len(P) <= 8 and not P.is_connected()


def test_nontrivial_upper_bundle():
    assert has_nontrivial_upper_bundle(bundle_over(2))
    assert not has_nontrivial_upper_bundle(zigzag(5))


def test_candidates_have_exact_rank():
    got = list(candidates(5, ranks=2, nontrivial=True))
    assert got and all(P.rank == 2 and has_nontrivial_upper_bundle(P) for P in got)
    assert all(P.rank == 3 for P in candidates(5, ranks=3))


def test_census_pentagon_reference():
    ref = face_poset(zigzag(5))
    rep = census_compare(ref, candidates(5, ranks=2))
    assert rep.compared > 0
    assert not rep.non_isomorphic
    assert census_compare(ref, []).compared == 0


def test_search_report_shape():
    out = search(4, ranks=2)
    assert out["count"] == len(out["classes"])
    assert all(c["f_vector"] is not None for c in out["classes"])
    out = search(5, ranks=2, match_fvector=(5, 5))
    assert all(tuple(c["f_vector"]) == (5, 5) for c in out["classes"])
