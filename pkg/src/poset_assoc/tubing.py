"""Tubes and tubings of a poset, and the face poset they define.

This is the direct enumeration route: the face poset of the poset
associahedron is the set of tubings ordered by reverse containment.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional

from .errors import BudgetExceeded, InputError, VerificationError
from .lattice import FaceLattice
from .poset import Poset

DEFAULT_BUDGET = 10**7

Tube = tuple  # sorted tuple of element ids
Tubing = tuple  # tuple of tubes in canonical order


def tube_key(t):
    return (len(t), tuple(t))


# -- mask level -------------------------------------------------------------

def is_filled_mask(P: Poset, mask: int) -> bool:
    for bd, bm in P.bundle_blocks:
        if bd & ~mask == 0 and not mask & bm:
            return False
    return True


def is_tube_mask(P: Poset, mask: int) -> bool:
    return (0 < mask < P.full and P.is_lower_mask(mask)
            and is_filled_mask(P, mask) and P.is_connected_mask(mask))


def tube_masks(P: Poset) -> list[int]:
    """All tubes of ``P`` as masks, in canonical order."""
    found = [m for m in P.lower_sets()
             if 0 < m < P.full and is_filled_mask(P, m) and P.is_connected_mask(m)]
    return sorted(found, key=lambda m: tube_key(P.ids(m)))


def _compatible(a: int, b: int) -> bool:
    c = a & b
    return c == 0 or c == a or c == b


def tubing_masks(P: Poset, max_size: Optional[int] = None, budget: int = DEFAULT_BUDGET):
    """All tubings as tuples of tube masks (each in canonical tube order).

    Backtracking over the tubes in order of increasing size, so each added
    tube is maximal among those chosen so far.  If the current family is a
    tubing, adding ``t`` keeps it one iff ``t`` together with any subfamily
    of the current maximal tubes disjoint from ``t`` has a filled union: a
    smaller tube inside one of those maximal tubes can only spoil
    filledness through a family that does not involve ``t``.  A tubing may
    not cover the whole poset, which only bites when ``P`` is disconnected.
    """
    tubes = tube_masks(P)
    filled_cache: dict[int, bool] = {}

    def filled(m):
        r = filled_cache.get(m)
        if r is None:
            r = filled_cache[m] = is_filled_mask(P, m)
        return r

    out = []
    limit = len(P) if max_size is None else max_size

    def rec(start, chosen, maximal):
        out.append(tuple(chosen))
        if len(out) > budget:
            raise BudgetExceeded(f"more than {budget} tubings")
        if len(chosen) >= limit:
            return
        for k in range(start, len(tubes)):
            t = tubes[k]
            if not all(_compatible(t, c) for c in chosen):
                continue
            others = [m for m in maximal if not m & t]
            unions = [t | u for u in [0, *_disjoint_unions(others)]]
            if any(u == P.full or not filled(u) for u in unions):
                continue
            new_max = others + [t]
            chosen.append(t)
            rec(k + 1, chosen, new_max)
            chosen.pop()

    rec(0, [], [])
    return out


def is_tubing_naive(P: Poset, masks: Iterable[int]) -> bool:
    """Definition-level check: pairwise compatible, every subfamily union filled, not covering ``P``."""
    masks = list(masks)
    u = 0
    for m in masks:
        u |= m
    if masks and u == P.full:
        return False
    if not all(is_tube_mask(P, m) for m in masks):
        return False
    if not all(_compatible(a, b) for a, b in combinations(masks, 2)):
        return False
    for r in range(1, len(masks) + 1):
        for sub in combinations(masks, r):
            u = 0
            for m in sub:
                u |= m
            if not is_filled_mask(P, u):
                return False
    return True


# -- id level ---------------------------------------------------------------

def is_filled(P: Poset, xs: Iterable[str]) -> bool:
    return is_filled_mask(P, P.mask(xs))


def is_tube(P: Poset, xs: Iterable[str]) -> bool:
    return is_tube_mask(P, P.mask(xs))


def tubes(P: Poset) -> list[Tube]:
    return [P.ids(m) for m in tube_masks(P)]


def is_compatible(t1: Iterable[str], t2: Iterable[str]) -> bool:
    a, b = set(t1), set(t2)
    return not (a & b) or a <= b or b <= a


def _disjoint_unions(masks):
    """Unions of every non-empty pairwise-disjoint subfamily."""
    def rec(k, used):
        for j in range(k, len(masks)):
            if not masks[j] & used:
                u = used | masks[j]
                yield u
                yield from rec(j + 1, u)

    yield from rec(0, 0)


def is_tubing(P: Poset, T: Iterable[Iterable[str]]) -> bool:
    """Pairwise compatible, not covering ``P``, and every pairwise-disjoint subfamily has a filled union.

    Any subfamily's union is the union of its own maximal members, which are
    pairwise disjoint, so this is the full definition.
    """
    T = [tuple(t) for t in T]
    masks = list(dict.fromkeys(P.mask(t) for t in T))
    for t, m in zip(T, masks):
        if not is_tube_mask(P, m):
            raise VerificationError(f"{tuple(t)} is not a tube", "NOT_A_TUBE")
    if not all(_compatible(a, b) for a, b in combinations(masks, 2)):
        return False
    return all(u != P.full and is_filled_mask(P, u) for u in _disjoint_unions(masks))


def canonical_tubing(T) -> Tubing:
    return tuple(sorted((tuple(sorted(t)) for t in T), key=tube_key))


def tubings(P: Poset, max_size: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> list[Tubing]:
    """All tubings (the empty one included), sorted by size then lexicographically."""
    found = [tuple(P.ids(m) for m in T) for T in tubing_masks(P, max_size, budget)]
    return sorted(found, key=lambda T: (len(T), [tube_key(t) for t in T]))


def dimension(P: Poset) -> int:
    if not len(P):
        raise InputError("empty poset", "EMPTY_RESULT")
    return len(P) - len(P.bundle_blocks)


def face_poset(P: Poset, budget: int = DEFAULT_BUDGET) -> FaceLattice:
    """Tubings of ``P`` under reverse containment; face labels are frozensets of tubes."""
    d = dimension(P)
    labels = [frozenset(T) for T in tubings(P, budget=budget)]
    return FaceLattice.from_label_sets(labels, d)


def f_vector(P: Poset, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    d = dimension(P)
    counts = [0] * (d + 1)
    for T in tubing_masks(P, budget=budget):
        counts[d - len(T)] += 1
    return tuple(counts[:d])


# -- x-fill machinery -------------------------------------------------------

def x_fill(P: Poset, x: str, T: Iterable[Iterable[str]]) -> Optional[Tube]:
    """``{x}`` together with the disjoint tubes ``T`` of ``P - x``, if that is a tube of ``P``."""
    m = 1 << P.idx(x)
    for t in T:
        tm = P.mask(t)
        if tm & m:
            raise InputError(f"{tuple(t)} overlaps {x!r} or another member of the tubing")
        m |= tm
    return P.ids(m) if is_tube_mask(P, m) else None


def tube_components(P: Poset, x: str, u: Iterable[str]) -> Tubing:
    """Connected components of ``u - {x}``, each checked to be a tube of ``P - x``."""
    i = P.idx(x)
    um = P.mask(u)
    if not um >> i & 1:
        raise InputError(f"tube {tuple(u)} does not contain {x!r}")
    Q = P.delete_elements([x])
    comps = []
    for c in P.components_mask(um & ~(1 << i)):
        ids = P.ids(c)
        if not is_tube_mask(Q, Q.mask(ids)):
            raise VerificationError(
                f"component {ids} of {tuple(sorted(u))} minus {x!r} is not a tube of P - {x}",
                "COMPONENT_NOT_TUBE")
        comps.append(ids)
    return canonical_tubing(comps)


def maximal_tubing_sizes(P: Poset) -> set[int]:
    """Sizes of the inclusion-maximal tubings."""
    all_t = [frozenset(T) for T in tubing_masks(P)]
    present = set(all_t)
    tubes_ = tube_masks(P)
    sizes = set()
    for T in all_t:
        if not any((T | {t}) in present for t in tubes_ if t not in T):
            sizes.add(len(T))
    return sizes
