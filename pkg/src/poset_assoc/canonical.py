"""Canonical forms of small posets, isomorphism-free enumeration, random posets."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from .poset import Poset, iter_bits

Code = tuple  # canonical strict down-set masks, element k relabelled as k


def _refine(colors, down, up):
    ncls = len(set(colors))
    n = len(colors)
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in iter_bits(down[v]))),
                 tuple(sorted(colors[u] for u in iter_bits(up[v])))) for v in range(n)]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        if len(table) == ncls:
            return colors
        ncls = len(table)


def canonical_code(down: tuple[int, ...]) -> Code:
    """Canonical form of the poset with strict down-set masks ``down``.

    Individualisation-refinement: refine colours by (colour, colours below,
    colours above), branch on the first smallest non-singleton cell, keep the
    lexicographically least relabelled down-set tuple.  Twins (same up- and
    down-sets) are interchangeable, so only one twin per cell is branched on.
    """
    n = len(down)
    up = [0] * n
    for v in range(n):
        for u in iter_bits(down[v]):
            up[u] |= 1 << v
    best: list = [None]

    def leaf(colors):
        order = sorted(range(n), key=lambda v: colors[v])
        pos = {v: k for k, v in enumerate(order)}
        code = []
        for v in order:
            m = 0
            for u in iter_bits(down[v]):
                m |= 1 << pos[u]
            code.append(m)
        code = tuple(code)
        if best[0] is None or code < best[0]:
            best[0] = code

    def search(colors):
        colors = _refine(colors, down, up)
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        cells = [c for c, k in sizes.items() if k > 1]
        if not cells:
            leaf(colors)
            return
        cell = min(cells, key=lambda c: (sizes[c], c))
        tried = []
        for v in range(n):
            if colors[v] != cell:
                continue
            if any(down[v] == down[w] and up[v] == up[w] for w in tried):
                continue
            tried.append(v)
            trial = [2 * c + 1 for c in colors]
            trial[v] -= 1
            search(trial)

    search([0] * n)
    return best[0]


def poset_code(P: Poset) -> Code:
    return canonical_code(P.down)


def from_code(code: Code, prefix: str = "v") -> Poset:
    n = len(code)
    w = len(str(max(n - 1, 0)))
    names = [f"{prefix}{i:0{w}d}" for i in range(n)]
    rel = [(names[u], names[v]) for v in range(n) for u in iter_bits(code[v])]
    return Poset(names, rel)


def are_isomorphic(P: Poset, Q: Poset) -> bool:
    return len(P) == len(Q) and poset_code(P) == poset_code(Q)


def _lower_sets(down: Code) -> Iterator[int]:
    n = len(down)
    order = sorted(range(n), key=lambda v: bin(down[v]).count("1"))

    def rec(pos, mask):
        if pos == n:
            yield mask
            return
        v = order[pos]
        yield from rec(pos + 1, mask)
        if down[v] & ~mask == 0:
            yield from rec(pos + 1, mask | (1 << v))

    yield from rec(0, 0)


def _heights(down: Code) -> list[int]:
    h = [0] * len(down)
    for v in sorted(range(len(down)), key=lambda k: bin(down[k]).count("1")):
        h[v] = 1 + max((h[u] for u in iter_bits(down[v])), default=0)
    return h


def poset_codes(n: int, max_rank: Optional[int] = None) -> list[Code]:
    """Canonical codes of all posets on ``n`` elements up to isomorphism.

    Grown one new maximal element at a time; ``max_rank`` bounds the number
    of elements in a chain.
    """
    level = {()}
    for _ in range(n):
        nxt = set()
        for code in level:
            h = _heights(code)
            for L in _lower_sets(code):
                height = 1 + max((h[u] for u in iter_bits(L)), default=0)
                if max_rank is not None and height > max_rank:
                    continue
                nxt.add(canonical_code(code + (L,)))
        level = nxt
    return sorted(level)


def enumerate_posets(n: int, connected: Optional[bool] = None, max_rank: Optional[int] = None,
                     min_rank: Optional[int] = None) -> list[Poset]:
    out = []
    for code in poset_codes(n, max_rank):
        P = from_code(code)
        if connected is not None and P.is_connected() != connected:
            continue
        if min_rank is not None and P.rank < min_rank:
            continue
        out.append(P)
    return out


def random_poset(n: int, rng: random.Random, p: float = 0.4, prefix: str = "v") -> Poset:
    """Random order: pairs ``i < j`` of a random ordering related with probability ``p``."""
    w = len(str(n - 1))
    names = [f"{prefix}{i:0{w}d}" for i in range(n)]
    rng.shuffle(names)
    rel = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Poset(names, rel)


def random_connected_poset(n: int, rng: random.Random, p: float = 0.4, prefix: str = "v") -> Poset:
    while True:
        P = random_poset(n, rng, p, prefix)
        if P.is_connected():
            return P


def random_disconnected_poset(max_n: int, rng: random.Random) -> Poset:
    """Disjoint union of 2-3 random connected posets with at most ``max_n`` elements in total."""
    while True:
        m = rng.choice([2, 2, 3])
        sizes = [rng.randint(1, 4) for _ in range(m)]
        if sum(sizes) <= max_n:
            break
    elements, rel = [], []
    for k, s in enumerate(sizes):
        Q = random_connected_poset(s, rng, p=0.6, prefix=f"{chr(ord('a') + k)}")
        elements += list(Q.elements)
        rel += list(Q.covers)
    return Poset(elements, rel)
