"""Construct the poset associahedron by iterated truncation.

The recursion removes a maximal element ``x`` of a longest chain:

* trivial bundle: truncate the polytope of ``P - x`` at the faces given by
  the components of ``u - x`` for every tube ``u`` containing ``x``, largest
  ``u`` first;
* non-trivial bundle: start from the polytope of ``P - (bundle(x) - x)``
  times a simplex whose vertices are the bundle members, and truncate the
  faces of pairs ``(t, B)`` whose target ``(t - x) | B`` is a tube,
  smallest target first.

Disconnected posets are products of their components with a simplex.
Facets of the result are labelled by the tubes of ``P`` (sorted tuples).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional

from .errors import InputError, VerificationError
from .lattice import FaceLattice, lattice_iso
from .polytope import (SimplePolytope, SimplexFacet, face, face_lattice, point, product,
                       relabel, simplex, truncate_face)
from .poset import Poset
from .tubing import face_poset, is_tube_mask, tube_components, tube_key, tube_masks


@dataclass(frozen=True)
class TruncationStep:
    face: frozenset
    new_label: tuple
    order_key: tuple

    def to_dict(self) -> dict:
        return {"face": sorted((_label_json(f) for f in self.face), key=_json_key),
                "new_label": list(self.new_label), "size": len(self.new_label)}


class CollapsedFacet(NamedTuple):
    """Facet of the collapsed-poset factor, named by its tube while the truncations run."""

    tube: tuple


def _label_json(f):
    if isinstance(f, SimplexFacet):
        return {"simplex_facet_omitting": f.omit}
    if isinstance(f, CollapsedFacet):
        return {"collapsed_tube": list(f.tube)}
    return list(f)


def _json_key(v):
    if isinstance(v, dict):
        k, val = next(iter(v.items()))
        return (1, k, val if isinstance(val, str) else "", val if isinstance(val, list) else [])
    return (0, "", "", v)


def schedule_trivial(P: Poset, x: str) -> list[TruncationStep]:
    """Steps turning the polytope of ``P - x`` into that of ``P``; ``bundle(x)`` must be ``{x}``."""
    i = P.idx(x)
    if P.bundle_masks[i] != 1 << i:
        raise InputError(f"bundle of {x!r} is not trivial")
    steps = []
    for u in tube_masks(P):
        if not u >> i & 1:
            continue
        ids = P.ids(u)
        comps = tube_components(P, x, ids)
        steps.append(TruncationStep(frozenset(comps), ids, (-len(ids), ids)))
    steps.sort(key=lambda s: s.order_key)
    return steps


def schedule_nontrivial(P: Poset, x: str) -> list[TruncationStep]:
    """Steps turning ``K(P - (b(x) - x)) x simplex`` into the polytope of ``P``.

    Simplex facets are ``SimplexFacet(z)`` for the bundle members ``z``;
    facets of the collapsed factor are ``CollapsedFacet(t)``.  The target of
    ``(t, {x})`` is ``t`` itself, so the collapsed-side names must stay
    distinct from the new tube labels until the end.
    """
    i = P.idx(x)
    bmask = P.bundle_masks[i]
    if bmask == 1 << i:
        raise InputError(f"bundle of {x!r} is trivial")
    bundle = P.ids(bmask)
    Q = P.collapse_bundle(x)
    qx = Q.idx(x)
    bases = [Q.ids(t) for t in tube_masks(Q) if t >> qx & 1]
    bases.append(Q.elements)
    steps = []
    for t in bases:
        proper = len(t) < len(Q)
        rest = [e for e in t if e != x]
        for r in range(1, len(bundle) + 1):
            for B in combinations(bundle, r):
                target = tuple(sorted(rest + list(B)))
                if not is_tube_mask(P, P.mask(target)):
                    continue
                facets = {SimplexFacet(z) for z in bundle if z not in B}
                if proper:
                    facets.add(CollapsedFacet(t))
                steps.append(TruncationStep(frozenset(facets), target, (len(target), target)))
    steps.sort(key=lambda s: s.order_key)
    return steps


@dataclass
class BuildTrace:
    """Records what each recursion level did (for the CLI schedule dump)."""

    levels: list = field(default_factory=list)

    def add(self, P, kind, root, steps):
        self.levels.append({"elements": list(P.elements), "kind": kind, "root": root,
                            "steps": [s.to_dict() for s in steps]})


def run_steps(base: SimplePolytope, steps: list[TruncationStep], check: bool = True) -> SimplePolytope:
    Q = base
    for s in steps:
        Q = truncate_face(Q, s.face, s.new_label, check=check)
    return Q


def build(P: Poset, root: Optional[str] = None, check: bool = True,
          trace: Optional[BuildTrace] = None) -> SimplePolytope:
    """Tube-labelled simple polytope of ``P`` built by truncations.

    ``root`` overrides the element removed at the top level; it must be a
    maximal element of a longest chain.  Lower levels always use
    ``pick_truncation_root``.
    """
    if not len(P):
        raise InputError("empty poset", "EMPTY_RESULT")
    if len(P) == 1:
        if root is not None:
            P.idx(root)
        return point()

    comps = P.components_mask(P.full)
    if len(comps) > 1:
        if root is not None:
            raise InputError("--root applies to connected posets only")
        parts = []
        for c in comps:
            sub = P.induced(c)
            parts.append(build(sub, check=check, trace=trace))
        simp = simplex(len(comps) - 1, [P.ids(c) for c in comps])
        Q = simp
        for K in parts:
            Q = product(Q, K, tag=False)
        if trace is not None:
            trace.add(P, "product", None, [])
        return _finish(P, Q)

    if root is None:
        x = P.pick_truncation_root()
    else:
        if root not in P.root_candidates():
            raise InputError(f"{root!r} is not a maximal element of a longest chain")
        x = root
    i = P.idx(x)
    if P.bundle_masks[i] == 1 << i:
        base = build(P.delete_elements([x]), check=check, trace=trace)
        steps = schedule_trivial(P, x)
        kind = "trivial"
    else:
        K = build(P.collapse_bundle(x), check=check, trace=trace)
        K = relabel(K, {t: CollapsedFacet(t) for t in K.facets})
        base = product(K, simplex(len(P.bundle(x)) - 1, [SimplexFacet(z) for z in P.bundle(x)]),
                       tag=False)
        steps = schedule_nontrivial(P, x)
        kind = "nontrivial"
    if trace is not None:
        trace.add(P, kind, x, steps)
    Q = run_steps(base, steps, check=check)
    # untouched collapsed-side facets avoid x and keep their tube
    Q = relabel(Q, {f: f.tube for f in Q.facets if isinstance(f, CollapsedFacet)})
    return _finish(P, Q)


def _finish(P: Poset, Q: SimplePolytope) -> SimplePolytope:
    expected = {P.ids(t) for t in tube_masks(P)}
    got = set(Q.facets)
    if got != expected:
        extra = sorted(map(repr, got - expected))[:3]
        missing = sorted(map(repr, expected - got))[:3]
        raise VerificationError(f"facet labels differ from tubes: extra {extra}, missing {missing}",
                                "LABEL_MISMATCH")
    return Q


@dataclass
class OracleReport:
    isomorphic: bool
    labels_agree: bool
    f_vector_build: tuple
    f_vector_oracle: tuple
    facet_map_identity: bool

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.labels_agree and self.facet_map_identity

    def to_dict(self) -> dict:
        return {"isomorphic": self.isomorphic, "labels_agree": self.labels_agree,
                "facet_map_identity": self.facet_map_identity,
                "f_vector_build": list(self.f_vector_build),
                "f_vector_oracle": list(self.f_vector_oracle)}


def verify_against_oracle(P: Poset, root: Optional[str] = None) -> OracleReport:
    """Compare the truncation construction with direct tubing enumeration."""
    K = build(P, root=root)
    Lb = face_lattice(K)
    Lo = face_poset(P)
    labels_agree = set(Lb.labels) == set(Lo.labels)
    seed = _facet_seed(Lb, Lo)
    m = lattice_iso(Lb, Lo, seed=seed) if seed is not None else None
    identity = m is not None and all(
        Lb.labels[a] == Lo.labels[b] for a, b in m.items() if Lb.dims[a] == Lb.dim - 1)
    if m is None and labels_agree:
        # labels agree but the seeded search failed; try unseeded so the verdict is still exact
        m = lattice_iso(Lb, Lo)
    return OracleReport(m is not None, labels_agree, Lb.f_vector(), Lo.f_vector(), identity)


def _facet_seed(Lb: FaceLattice, Lo: FaceLattice) -> Optional[dict]:
    """Pair each builder facet ``{t}`` with the oracle face ``{t}`` (same tube)."""
    seed = {}
    for a in Lb.faces_of_dim(Lb.dim - 1):
        b = Lo.index.get(Lb.labels[a])
        if b is None:
            return None
        seed[a] = b
    return seed


def facet_labels(Q: SimplePolytope) -> list[tuple]:
    return sorted(Q.facets, key=tube_key)


def vertex_labels(Q: SimplePolytope) -> list[list[tuple]]:
    return sorted((sorted(v, key=tube_key) for v in Q.vertices), key=lambda v: [tube_key(t) for t in v])


def has_face(Q: SimplePolytope, labels) -> bool:
    return face(Q, labels) is not None

