import pytest

from poset_assoc.errors import AssocError, InputError, VerificationError
from poset_assoc.lattice import (FaceLattice, diamond_check, euler_check, graded_check,
                                 lattice_iso)
from poset_assoc.polytope import (SimplePolytope, face, face_lattice, point, product, relabel,
                                  simplex, truncate_face, validate)
from poset_assoc.tubing import face_poset


def polygon(k):
    """k-gon with facets 0..k-1, vertex i between edges i and i+1."""
    return SimplePolytope(2, frozenset(frozenset([i, (i + 1) % k]) for i in range(k)))


def square():
    return product(simplex(1, "ab"), simplex(1, "cd"), tag=False)


def cube():
    return product(square(), simplex(1, "ef"), tag=False)


def test_point_and_simplex():
    assert point().f_vector() == ()
    assert len(point().vertices) == 1
    assert simplex(1).f_vector() == (2,)
    assert simplex(2).f_vector() == (3, 3)
    assert simplex(3).f_vector() == (4, 6, 4)
    with pytest.raises(InputError):
        simplex(2, "ab")
    with pytest.raises(InputError):
        simplex(-1)


def test_product_f_polynomial():
    A, B = polygon(5), simplex(1)
    P = product(A, B)
    assert P.f_vector() == (10, 15, 7)
    fa, fb = face_lattice(A).f_polynomial(), face_lattice(B).f_polynomial()
    want = [0] * (len(fa) + len(fb) - 1)
    for i, x in enumerate(fa):
        for j, y in enumerate(fb):
            want[i + j] += x * y
    assert face_lattice(P).f_polynomial() == tuple(want)
    assert not validate(P)


def test_untagged_product_rejects_shared_labels():
    with pytest.raises(AssocError) as exc:
        product(simplex(1, "ab"), simplex(1, "bc"), tag=False)
    assert exc.value.code == "LABEL_CLASH"


def test_relabel_cannot_merge():
    with pytest.raises(InputError):
        relabel(square(), {"a": "b"})


def test_face_lookup():
    Q = square()
    assert face(Q, ["a", "c"]) == {frozenset("ac")}
    assert face(Q, ["a", "b"]) is None
    assert len(face(Q, [])) == 4
    with pytest.raises(InputError) as exc:
        face(Q, ["z"])
    assert exc.value.code == "UNKNOWN_FACET"


def test_truncate_vertex_of_square_gives_pentagon():
    R = truncate_face(square(), ["a", "c"], "new")
    assert R.f_vector() == (5, 5)
    assert lattice_iso(face_lattice(R), face_lattice(polygon(5))) is not None


def test_truncate_edge_of_cube():
    R = truncate_face(cube(), ["a", "c"], "new")
    assert R.f_vector() == (10, 15, 7)
    assert not validate(R)
    # vertex count grows by (|S| - 1) times the vertices on the face
    assert len(R.vertices) - len(cube().vertices) == (2 - 1) * 2


def test_truncate_facet_is_a_relabel():
    R = truncate_face(square(), ["a"], "A")
    assert R.facets == frozenset("Abcd")
    assert R.f_vector() == (4, 4)


def test_truncate_errors():
    with pytest.raises(VerificationError) as exc:
        truncate_face(square(), ["a", "b"], "x")
    assert exc.value.code == "NO_SUCH_FACE"
    with pytest.raises(AssocError) as exc:
        truncate_face(square(), ["a", "c"], "d")
    assert exc.value.code == "LABEL_CLASH"


def test_validate_accepts_cube_and_flags_broken_square():
    assert validate(cube()) == []
    broken = SimplePolytope(2, square().vertices - {frozenset("ac")})
    problems = validate(broken)
    assert problems and "edges" in problems[0]
    lopsided = SimplePolytope(2, frozenset([frozenset("ab"), frozenset("abc")]))
    assert validate(lopsided)


def test_validate_flags_two_disjoint_triangles():
    t1 = simplex(2, "abc")
    t2 = simplex(2, "def")
    Q = SimplePolytope(2, t1.vertices | t2.vertices)
    assert "vertex graph is disconnected" in validate(Q)


def test_lattice_checks_on_polytopes():
    for Q in (polygon(5), cube(), simplex(3), product(polygon(6), simplex(1))):
        L = face_lattice(Q)
        assert graded_check(L) and euler_check(L) and diamond_check(L)


def test_diamond_fails_on_a_broken_lattice():
    # a "polygon" edge with three vertices
    sets = [frozenset(), frozenset("a"), frozenset("ab"), frozenset("ac"), frozenset("ad")]
    L = FaceLattice.from_label_sets(sets, 2)
    assert not diamond_check(L)


def test_lattice_iso_cases(Z5):
    pent = face_lattice(polygon(5))
    assert lattice_iso(face_poset(Z5), pent) is not None
    assert lattice_iso(pent, face_lattice(polygon(4))) is None
    m = lattice_iso(pent, pent)
    assert m is not None
    assert lattice_iso(face_lattice(cube()), face_lattice(product(polygon(5), simplex(1)))) is None


def test_lattice_iso_same_f_vector_different_lattice():
    # both have f = (12, 18, 8): the hexagonal prism, and a cube with two
    # skew edges cut (four squares, four pentagons).  Cutting two parallel
    # edges instead would give the prism back.
    hex_prism = face_lattice(product(polygon(6), simplex(1)))
    Q = truncate_face(cube(), ["a", "c"], "x")
    Q = truncate_face(Q, ["b", "e"], "y")
    L = face_lattice(Q)
    assert L.f_vector() == hex_prism.f_vector() == (12, 18, 8)
    assert lattice_iso(L, hex_prism) is None
    assert lattice_iso(hex_prism, hex_prism) is not None
