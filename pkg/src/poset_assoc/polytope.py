"""Combinatorial simple polytopes given by vertex-facet incidence.

A ``SimplePolytope`` of dimension ``d`` is a set of vertices, each vertex
being the frozenset of the ``d`` facet labels it lies on.  Faces are
addressed by facet-label sets: in a simple polytope the face cut out by
``S`` (if non-empty) has codimension ``|S|``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, NamedTuple, Optional

from .errors import AssocError, InputError, VerificationError
from .lattice import FaceLattice


class Tagged(NamedTuple):
    side: int
    label: Hashable


class SimplexFacet(NamedTuple):
    """Facet of a simplex opposite the vertex ``omit``."""

    omit: Hashable


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    vertices: frozenset  # of frozensets of facet labels

    @property
    def facets(self) -> frozenset:
        out = set()
        for v in self.vertices:
            out |= v
        return frozenset(out)

    def f_vector(self) -> tuple[int, ...]:
        return face_lattice(self).f_vector()

    def __repr__(self):
        return f"SimplePolytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"


def point() -> SimplePolytope:
    return SimplePolytope(0, frozenset([frozenset()]))


def simplex(k: int, labels: Optional[Iterable[Hashable]] = None) -> SimplePolytope:
    """The ``k``-simplex; facet ``i`` is labelled ``labels[i]`` (default ``SimplexFacet(i)``)."""
    if k < 0:
        raise InputError(f"simplex dimension must be >= 0, got {k}", "BAD_SIZE")
    labels = list(labels) if labels is not None else [SimplexFacet(i) for i in range(k + 1)]
    if len(labels) != k + 1 or len(set(labels)) != k + 1:
        raise InputError(f"simplex({k}) needs {k + 1} distinct labels")
    if k == 0:
        return point()
    full = frozenset(labels)
    return SimplePolytope(k, frozenset(full - {lab} for lab in labels))


def product(A: SimplePolytope, B: SimplePolytope, tag: bool = True) -> SimplePolytope:
    """Cartesian product.  With ``tag=False`` labels are used as-is and must not collide."""
    if tag:
        A = relabel(A, {f: Tagged(0, f) for f in A.facets})
        B = relabel(B, {f: Tagged(1, f) for f in B.facets})
    elif A.facets & B.facets:
        clash = sorted(map(repr, A.facets & B.facets))
        raise AssocError(f"facet labels shared by both factors: {clash}", "LABEL_CLASH")
    verts = frozenset(a | b for a in A.vertices for b in B.vertices)
    return SimplePolytope(A.dim + B.dim, verts)


def relabel(Q: SimplePolytope, mapping: dict) -> SimplePolytope:
    verts = frozenset(frozenset(mapping.get(f, f) for f in v) for v in Q.vertices)
    out = SimplePolytope(Q.dim, verts)
    if len(out.vertices) != len(Q.vertices) or any(len(v) != Q.dim for v in out.vertices):
        raise InputError("relabelling merged distinct facets", "LABEL_CLASH")
    return out


def face(Q: SimplePolytope, S: Iterable[Hashable]) -> Optional[frozenset]:
    """Vertex set of the face cut out by facets ``S``, or ``None`` if empty."""
    S = frozenset(S)
    unknown = S - Q.facets
    if unknown:
        raise InputError(f"unknown facets {sorted(map(repr, unknown))}", "UNKNOWN_FACET")
    verts = frozenset(v for v in Q.vertices if S <= v)
    return verts or None


def face_lattice(Q: SimplePolytope) -> FaceLattice:
    """All non-empty faces, deduplicated by vertex set.

    Each face is labelled by the set of facets containing it (the
    intersection of its vertices).  In a simple polytope the subsets of
    vertices are exactly these closed sets; ``validate`` checks that.
    """
    closed = set()
    for v in Q.vertices:
        for r in range(len(v) + 1):
            for S in combinations(v, r):
                closed.add(frozenset(S))
    return FaceLattice.from_label_sets(closed, Q.dim)


def truncate_face(Q: SimplePolytope, S: Iterable[Hashable], new_label: Hashable,
                  check: bool = True) -> SimplePolytope:
    """Cut off the face ``S`` and name the new facet ``new_label``.

    Every vertex ``v`` of the face is replaced by the ``|S|`` vertices
    ``(v - {s}) | {new}``.  Cutting a facet only renames it.
    """
    S = frozenset(S)
    verts = face(Q, S)
    if verts is None:
        raise VerificationError(f"no face with facets {sorted(map(repr, S))}", "NO_SUCH_FACE")
    if new_label in Q.facets and not (len(S) == 1 and new_label in S):
        raise AssocError(f"label {new_label!r} already in use", "LABEL_CLASH")
    if len(S) == 1:
        (old,) = S
        return relabel(Q, {old: new_label})
    out = set(Q.vertices - verts)
    for v in verts:
        for s in S:
            out.add((v - {s}) | {new_label})
    R = SimplePolytope(Q.dim, frozenset(out))
    if check:
        problems = quick_validate(R)
        if problems:
            raise VerificationError(f"truncating {sorted(map(repr, S))} gave a non-simple result: "
                                    + "; ".join(problems[:3]), "VALIDATION_FAILED")
    return R


def quick_validate(Q: SimplePolytope) -> list[str]:
    """Vertex degrees and edge endpoint counts only (cheap; run after every truncation)."""
    problems = []
    d = Q.dim
    if d == 0:
        return [] if Q.vertices == {frozenset()} else ["a 0-polytope has one empty vertex"]
    for v in Q.vertices:
        if len(v) != d:
            problems.append(f"vertex {_fmt(v)} lies on {len(v)} facets, expected {d}")
    if problems:
        return problems
    ridges = Counter(v - {f} for v in Q.vertices for f in v)
    bad = [r for r, k in ridges.items() if k != 2]
    if bad:
        problems.append(f"{len(bad)} edges without exactly two endpoints, e.g. {_fmt(bad[0])}")
    return problems


def validate(Q: SimplePolytope) -> list[str]:
    """Check every simple-polytope invariant; returns a list of violations (empty if valid)."""
    problems = quick_validate(Q)
    d = Q.dim
    if d == 0 or problems:
        return problems
    verts = list(Q.vertices)
    # adjacency: share d-1 facets
    by_ridge: dict[frozenset, list[int]] = {}
    for i, v in enumerate(verts):
        for f in v:
            by_ridge.setdefault(v - {f}, []).append(i)
    adj = [set() for _ in verts]
    for ends in by_ridge.values():
        for a in ends:
            adj[a].update(b for b in ends if b != a)
    irregular = [i for i in range(len(verts)) if len(adj[i]) != d]
    if irregular:
        problems.append(f"{len(irregular)} vertices without exactly {d} neighbours")
    seen = {0}
    queue = deque([0])
    while queue:
        for b in adj[queue.popleft()]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    if len(seen) != len(verts):
        problems.append("vertex graph is disconnected")
    # every face cut out by k facets has exactly those k facets
    common: dict[frozenset, frozenset] = {}
    for v in verts:
        for r in range(1, d + 1):
            for S in combinations(v, r):
                S = frozenset(S)
                common[S] = common.get(S, v) & v
    for S, c in common.items():
        if c != S:
            problems.append(f"facets {_fmt(S)} meet in a face lying on {len(c)} facets")
            break
    return problems


def _fmt(s):
    return "{" + ", ".join(sorted(map(repr, s))) + "}"
