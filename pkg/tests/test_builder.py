from math import comb

import pytest

from poset_assoc.builder import (BuildTrace, build, facet_labels, has_face, schedule_nontrivial,
                                 schedule_trivial, verify_against_oracle)
from poset_assoc.canonical import enumerate_posets
from poset_assoc.errors import InputError
from poset_assoc.generators import bundle_over, chain, cross_stack, fan, zigzag
from poset_assoc.lattice import lattice_iso
from poset_assoc.polytope import SimplexFacet, face_lattice, product, validate
from poset_assoc.poset import Poset
from poset_assoc.tubing import face_poset, tubes


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_small_examples(Z5, M, B3):
    assert build(Z5).f_vector() == (5, 5)
    assert build(M).f_vector() == (4, 4)
    assert build(B3).f_vector() == (6, 6)
    for P in (Z5, M, B3):
        assert facet_labels(build(P)) == tubes(P)
        assert validate(build(P)) == []


def test_chain_is_a_point():
    assert schedule_trivial(chain(2), "c2") == []
    K = build(chain(4))
    assert K.dim == 0 and len(K.vertices) == 1


def test_z5_schedule_is_one_cut(Z5):
    steps = schedule_trivial(Z5, "p")
    assert [(s.face, s.new_label) for s in steps if len(s.face) > 1] == [
        (frozenset({("a",), ("b",)}), ("a", "b", "p"))]
    # {a, b, p} is the only tube containing p
    assert len(steps) == 1


def test_b3_schedule(B3):
    steps = schedule_nontrivial(B3, "p")
    cuts = [s for s in steps if len(s.face) == 2]
    relabels = [s for s in steps if len(s.face) == 1]
    assert [s.new_label for s in cuts] == [("m", "p"), ("m", "q"), ("m", "r")]
    assert sorted(s.new_label for s in relabels) == [("m", "p", "q"), ("m", "p", "r"), ("m", "q", "r")]
    # cuts come first (smaller targets)
    assert steps.index(cuts[-1]) < steps.index(relabels[0])
    assert cuts[0].face == {SimplexFacet("q"), SimplexFacet("r")}


def test_m_schedule_only_relabels(M):
    steps = schedule_nontrivial(M, "e1")
    assert [s.new_label for s in steps] == [("e1", "u", "v"), ("e2", "u", "v")]
    assert all(len(s.face) == 1 for s in steps)
    assert set(build(M).facets) == {("u",), ("v",), ("e1", "u", "v"), ("e2", "u", "v")}


def test_schedule_kind_checks(Z5, B3):
    with pytest.raises(InputError):
        schedule_trivial(B3, "p")
    with pytest.raises(InputError):
        schedule_nontrivial(Z5, "p")


def test_trace_and_root_override(Z5):
    tr = BuildTrace()
    build(Z5, root="q", trace=tr)
    assert tr.levels[-1]["root"] == "q"
    with pytest.raises(InputError):
        build(Z5, root="a")


def test_disconnected_facets_include_components():
    P = Poset(["a", "b", "c", "d"], [("a", "b")])
    K = build(P)
    assert ("a", "b") in K.facets and ("c",) in K.facets
    assert facet_labels(K) == tubes(P)


@pytest.mark.parametrize("n", range(1, 7))
def test_zigzag_vertices_are_catalan(n):
    K = build(zigzag(2 * n - 1))
    assert len(K.vertices) == catalan(n)


def test_named_families():
    assert build(cross_stack(3)).f_vector() == (8, 12, 6)
    assert build(fan(3)).f_vector() == (4, 6, 4)
    assert build(bundle_over(4)).f_vector() == (24, 36, 14)
    assert build(zigzag(7)).f_vector() == (14, 21, 9)


def test_oracle_report(Z5):
    rep = verify_against_oracle(Z5)
    assert rep.ok and rep.f_vector_build == rep.f_vector_oracle == (5, 5)
    assert rep.to_dict()["isomorphic"] is True


def test_oracle_on_corpus():
    for n in range(1, 6):
        for P in enumerate_posets(n):
            assert verify_against_oracle(P).ok, P.to_dict()


def test_root_choices_agree():
    for n in range(2, 6):
        for P in enumerate_posets(n, connected=True):
            lattices = [face_lattice(build(P, root=x)) for x in P.root_candidates()]
            for L in lattices[1:]:
                assert lattice_iso(lattices[0], L) is not None


def qualifying_roots(P):
    """Roots with a trivial bundle and a non-empty connected boundary."""
    out = []
    for x in P.root_candidates():
        i = P.idx(x)
        if P.bundle_masks[i] == 1 << i and P.is_connected_mask(P.down[i]):
            out.append(x)
    return out


def test_removing_a_qualifying_root_keeps_the_polytope():
    seen = 0
    for n in range(2, 6):
        for P in enumerate_posets(n, connected=True):
            for x in qualifying_roots(P):
                seen += 1
                assert lattice_iso(face_lattice(build(P)), face_lattice(build(P.delete_elements([x])))) is not None
                assert all(len(s.face) == 1 for s in schedule_trivial(P, x))
    assert seen > 10


def test_permutohedron_factor():
    # bundle of maximal elements sitting over everything else
    seen = 0
    for n in range(2, 6):
        for P in enumerate_posets(n, connected=True):
            for x in P.ids(P.maximal_mask):
                i = P.idx(x)
                b = P.bundle_masks[i]
                if b == 1 << i or P.down[i] != P.full & ~b or b & ~P.maximal_mask:
                    continue
                seen += 1
                rest = P.induced(P.full & ~b)
                want = face_lattice(product(build(rest), build(bundle_over(bin(b).count("1")))))
                assert lattice_iso(face_poset(P), want) is not None
    assert seen > 3


def test_has_face(Z5):
    K = build(Z5)
    assert has_face(K, [("a",), ("c",)])
    # {a} and {b} are both facets but their union is unfilled, so they do not meet
    assert not has_face(K, [("a",), ("b",)])
