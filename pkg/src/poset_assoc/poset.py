"""Finite posets with bitmask internals.

Elements are identified by strings.  Internally element ``i`` is the
``i``-th identifier in lexicographic order and subsets are Python ints used
as bitmasks, so ``1 << i`` is the singleton ``{elements[i]}``.  Every public
set-valued result is returned as a sorted tuple of identifiers.
"""

from __future__ import annotations

import graphlib
import json
from functools import cached_property
from typing import Iterable, Iterator

from .errors import InputError, cycle, unknown_element


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """An immutable finite poset.

    ``relations`` may contain any strict-order pairs ``(lower, upper)``; the
    order is their reflexive-transitive closure and the stored covers are its
    transitive reduction.
    """

    def __init__(self, elements: Iterable[str], relations: Iterable[tuple[str, str]] = ()):
        elements = list(elements)
        for x in elements:
            if not isinstance(x, str) or not x:
                raise InputError(f"element ids must be non-empty strings, got {x!r}")
        if len(set(elements)) != len(elements):
            dups = sorted({x for x in elements if elements.count(x) > 1})
            raise InputError(f"duplicate element ids {dups}", "DUPLICATE_ID")
        self.elements: tuple[str, ...] = tuple(sorted(elements))
        self.index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)

        preds: dict[int, set[int]] = {i: set() for i in range(n)}
        for pair in relations:
            lo, hi = pair
            if lo not in self.index:
                raise unknown_element(lo)
            if hi not in self.index:
                raise unknown_element(hi)
            if lo == hi:
                raise cycle(f"self-loop on {lo!r}")
            preds[self.index[hi]].add(self.index[lo])

        try:
            order = list(graphlib.TopologicalSorter(preds).static_order())
        except graphlib.CycleError as exc:
            names = [self.elements[i] for i in exc.args[1]]
            raise cycle(f"relations contain the cycle {names}") from None

        down = [0] * n
        for i in order:
            m = 0
            for j in preds[i]:
                m |= down[j] | (1 << j)
            down[i] = m
        self.down: tuple[int, ...] = tuple(down)

        lower_covers = []
        for i in range(n):
            m = down[i]
            redundant = 0
            for j in iter_bits(m):
                redundant |= down[j]
            lower_covers.append(m & ~redundant)
        self.lower_covers: tuple[int, ...] = tuple(lower_covers)

        up = [0] * n
        upper_covers = [0] * n
        for i in range(n):
            for j in iter_bits(down[i]):
                up[j] |= 1 << i
            for j in iter_bits(lower_covers[i]):
                upper_covers[j] |= 1 << i
        self.up: tuple[int, ...] = tuple(up)
        self.upper_covers: tuple[int, ...] = tuple(upper_covers)
        self.full: int = (1 << n) - 1

    # -- basic protocol ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.down == other.down

    def __hash__(self):
        return hash((self.elements, self.down))

    def __repr__(self):
        cov = ", ".join(f"{a}<{b}" for a, b in self.covers)
        return f"Poset([{', '.join(self.elements)}]; {cov})"

    # -- conversions ------------------------------------------------------

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise unknown_element(x) from None

    def mask(self, xs: Iterable[str]) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.idx(x)
        return m

    def ids(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in iter_bits(mask))

    @cached_property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Cover pairs ``(lower, upper)`` sorted lexicographically."""
        pairs = []
        for i in range(len(self)):
            for j in iter_bits(self.lower_covers[i]):
                pairs.append((self.elements[j], self.elements[i]))
        return tuple(sorted(pairs))

    def leq(self, a: str, b: str) -> bool:
        i, j = self.idx(a), self.idx(b)
        return i == j or bool(self.down[j] >> i & 1)

    def to_dict(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=None, separators=(", ", ": "))

    def to_dot(self, name="P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        lines += [f'  "{x}";' for x in self.elements]
        lines += [f'  "{a}" -> "{b}";' for a, b in self.covers]
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- order-theoretic primitives (mask level) ---------------------------

    @cached_property
    def bundle_masks(self) -> tuple[int, ...]:
        """Bundle of each element, as a mask, indexed by element."""
        by_boundary: dict[int, int] = {}
        for i, d in enumerate(self.down):
            by_boundary[d] = by_boundary.get(d, 0) | (1 << i)
        return tuple(by_boundary[d] for d in self.down)

    @cached_property
    def bundle_blocks(self) -> tuple[tuple[int, int], ...]:
        """Distinct bundles as ``(boundary_mask, bundle_mask)`` pairs."""
        seen = {}
        for i, d in enumerate(self.down):
            seen.setdefault(d, self.bundle_masks[i])
        return tuple(sorted(seen.items(), key=lambda kv: (kv[1] & -kv[1])))

    def closure_mask(self, mask: int) -> int:
        out = mask
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    def is_lower_mask(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def is_connected_mask(self, mask: int) -> bool:
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= self.lower_covers[i] | self.upper_covers[i]
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def components_mask(self, mask: int) -> list[int]:
        """Connected components of the cover graph restricted to ``mask``."""
        comps = []
        rest = mask
        while rest:
            seen = rest & -rest
            frontier = seen
            while frontier:
                nxt = 0
                for i in iter_bits(frontier):
                    nxt |= self.lower_covers[i] | self.upper_covers[i]
                nxt &= rest & ~seen
                seen |= nxt
                frontier = nxt
            comps.append(seen)
            rest &= ~seen
        return comps

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Number of elements in the longest chain ending at each element."""
        h = [0] * len(self)
        for i in sorted(range(len(self)), key=lambda k: popcount(self.down[k])):
            h[i] = 1 + max((h[j] for j in iter_bits(self.lower_covers[i])), default=0)
        return tuple(h)

    @property
    def rank(self) -> int:
        """Length (element count) of a longest chain."""
        return max(self.heights, default=0)

    @property
    def minimal_mask(self) -> int:
        return sum(1 << i for i, d in enumerate(self.down) if not d)

    @property
    def maximal_mask(self) -> int:
        return sum(1 << i for i, u in enumerate(self.up) if not u)

    def lower_sets(self) -> Iterator[int]:
        """All lower sets (as masks), including the empty set and the whole poset."""
        order = sorted(range(len(self)), key=lambda k: (self.heights[k], k))

        def rec(pos, mask):
            if pos == len(order):
                yield mask
                return
            i = order[pos]
            yield from rec(pos + 1, mask)
            if self.down[i] & ~mask == 0:
                yield from rec(pos + 1, mask | (1 << i))

        yield from rec(0, 0)

    def induced(self, mask: int) -> Poset:
        if not mask:
            raise InputError("cannot remove every element", "EMPTY_RESULT")
        keep = [self.elements[i] for i in iter_bits(mask)]
        rel = []
        for i in iter_bits(mask):
            for j in iter_bits(self.down[i] & mask):
                rel.append((self.elements[j], self.elements[i]))
        return Poset(keep, rel)

    # -- public id-level operations ---------------------------------------

    def boundary(self, x: str) -> tuple[str, ...]:
        """All elements strictly below ``x``."""
        return self.ids(self.down[self.idx(x)])

    def bundle(self, x: str) -> tuple[str, ...]:
        return self.ids(self.bundle_masks[self.idx(x)])

    def bundles(self) -> list[tuple[str, ...]]:
        return [self.ids(b) for _, b in self.bundle_blocks]

    def is_lower_set(self, xs: Iterable[str]) -> bool:
        return self.is_lower_mask(self.mask(xs))

    def lower_closure(self, xs: Iterable[str]) -> tuple[str, ...]:
        return self.ids(self.closure_mask(self.mask(xs)))

    def is_connected_subset(self, xs: Iterable[str]) -> bool:
        return self.is_connected_mask(self.mask(xs))

    def hasse_components(self) -> list[Poset]:
        return [self.induced(c) for c in self.components_mask(self.full)]

    def is_connected(self) -> bool:
        return self.is_connected_mask(self.full)

    def delete_elements(self, xs: Iterable[str]) -> Poset:
        return self.induced(self.full & ~self.mask(xs))

    def collapse_bundle(self, x: str) -> Poset:
        i = self.idx(x)
        return self.induced(self.full & ~(self.bundle_masks[i] & ~(1 << i)))

    def root_candidates(self) -> tuple[str, ...]:
        """Maximal elements of maximum-length chains."""
        top = self.rank
        return tuple(x for x, h in zip(self.elements, self.heights) if h == top)

    def pick_truncation_root(self) -> str:
        if not self.elements:
            raise InputError("empty poset", "EMPTY_RESULT")
        return self.root_candidates()[0]

    def relabel(self, mapping: dict[str, str]) -> Poset:
        return Poset([mapping[x] for x in self.elements],
                     [(mapping[a], mapping[b]) for a, b in self.covers])


def parse_poset(doc) -> Poset:
    """Build a poset from a JSON string or an already-decoded mapping.

    The mapping needs ``elements`` and ``covers``; ``edges`` is accepted as
    an alias for ``covers``.  Non-cover edges are closed and then reduced.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InputError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "elements" not in doc:
        raise InputError("poset document needs an 'elements' array")
    edges = doc.get("covers", doc.get("edges", []))
    pairs = []
    for e in edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise InputError(f"edge {e!r} is not a [lower, upper] pair")
        pairs.append((e[0], e[1]))
    return Poset(doc["elements"], pairs)


def serialize(P: Poset) -> str:
    return P.dumps()
