"""Isomorphism-free census of small posets with f-vector and lattice comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .canonical import from_code, poset_codes
from .lattice import FaceLattice, lattice_iso
from .poset import Poset
from .tubing import DEFAULT_BUDGET, dimension, f_vector, face_poset


def has_nontrivial_upper_bundle(P: Poset) -> bool:
    """A bundle of two or more non-minimal elements.

    All minimal elements always form one bundle, so only bundles above the
    bottom rank say anything about the poset.
    """
    mins = P.minimal_mask
    return any(b & (b - 1) and not b & mins for _, b in P.bundle_blocks)


def candidates(max_elements: int, ranks: int = 2, min_elements: int = 1,
               nontrivial: bool = False, dim: Optional[int] = None) -> Iterator[Poset]:
    """Posets whose longest chain has exactly ``ranks`` elements, one per isomorphism class."""
    for n in range(min_elements, max_elements + 1):
        for code in poset_codes(n, max_rank=ranks):
            P = from_code(code)
            if P.rank != ranks:
                continue
            if nontrivial and not has_nontrivial_upper_bundle(P):
                continue
            if dim is not None and dimension(P) != dim:
                continue
            yield P


@dataclass
class CensusReport:
    compared: int = 0
    isomorphic: list = field(default_factory=list)
    non_isomorphic: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"compared": self.compared,
                "isomorphic": len(self.isomorphic), "non_isomorphic": len(self.non_isomorphic),
                "isomorphic_posets": [P.to_dict() for P in self.isomorphic]}


def census_compare(reference: FaceLattice, posets: Iterable[Poset],
                   budget: int = DEFAULT_BUDGET) -> CensusReport:
    """Run an exact lattice isomorphism test for every poset whose f-vector matches ``reference``."""
    report = CensusReport()
    target = reference.f_vector()
    for P in posets:
        if dimension(P) != reference.dim or f_vector(P, budget=budget) != target:
            continue
        report.compared += 1
        if lattice_iso(reference, face_poset(P, budget=budget)) is not None:
            report.isomorphic.append(P)
        else:
            report.non_isomorphic.append(P)
    return report


def search(max_elements: int, ranks: int = 2, nontrivial: bool = False,
           match_fvector: Optional[tuple] = None, reference: Optional[FaceLattice] = None,
           min_elements: int = 1) -> dict:
    """Census of isomorphism classes with their f-vectors.

    ``match_fvector`` keeps only matching classes; ``reference`` adds an
    exact lattice comparison of every class whose f-vector matches it.
    """
    if reference is not None and match_fvector is None:
        match_fvector = reference.f_vector()
    classes = []
    for P in candidates(max_elements, ranks, min_elements, nontrivial):
        fv = f_vector(P)
        if match_fvector is not None and fv != tuple(match_fvector):
            continue
        classes.append((P, fv))
    out = {"ranks": ranks, "max_elements": max_elements, "nontrivial_bundle_required": nontrivial,
           "classes": [{"poset": P.to_dict(), "f_vector": list(fv)} for P, fv in classes],
           "count": len(classes)}
    if reference is not None:
        out["comparison"] = census_compare(reference, [P for P, _ in classes]).to_dict()
    return out
