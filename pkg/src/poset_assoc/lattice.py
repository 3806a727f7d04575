"""Graded face lattices, structural checks, and exact isomorphism search."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from .errors import BudgetExceeded

DEFAULT_ISO_BUDGET = 200_000


@dataclass(eq=False)
class FaceLattice:
    """Faces of a polytope (the empty face excluded), graded by dimension.

    ``below[i]`` lists the indices of the faces covered by face ``i``; they
    all have dimension ``dims[i] - 1``.  Exactly one face has dimension
    ``dim`` (the whole polytope).
    """

    dim: int
    labels: list
    dims: list[int]
    below: list[tuple[int, ...]]
    above: list[tuple[int, ...]] = field(init=False)

    def __post_init__(self):
        above = [[] for _ in self.labels]
        for i, lows in enumerate(self.below):
            for j in lows:
                above[j].append(i)
        self.above = [tuple(a) for a in above]
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def from_label_sets(cls, sets: Sequence[frozenset], dim: int) -> FaceLattice:
        """Lattice of a family of sets closed under taking subsets.

        A face labelled ``S`` has dimension ``dim - |S|`` and lies above
        exactly the faces ``S | {a}`` present in the family.
        """
        sets = sorted(set(sets), key=lambda s: (-len(s), sorted(map(_sort_key, s))))
        index = {s: i for i, s in enumerate(sets)}
        below: list[list[int]] = [[] for _ in sets]
        for s in sets:
            j = index[s]
            for a in s:
                i = index.get(s - {a})
                if i is not None:
                    below[i].append(j)
        return cls(dim, list(sets), [dim - len(s) for s in sets], [tuple(sorted(b)) for b in below])

    def __len__(self):
        return len(self.labels)

    def f_vector(self) -> tuple[int, ...]:
        c = Counter(self.dims)
        return tuple(c.get(k, 0) for k in range(self.dim))

    def faces_of_dim(self, k: int) -> list[int]:
        return [i for i, d in enumerate(self.dims) if d == k]

    def vertices_of(self, i: int) -> set[int]:
        """Indices of the vertices (0-faces) lying in face ``i``."""
        seen = {i}
        stack = [i]
        while stack:
            for j in self.below[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return {j for j in seen if self.dims[j] == 0}

    def f_polynomial(self) -> tuple[int, ...]:
        """Face counts for dimensions ``0..dim`` (top face included)."""
        c = Counter(self.dims)
        return tuple(c.get(k, 0) for k in range(self.dim + 1))

    def to_dict(self) -> dict:
        faces = []
        for i in range(len(self)):
            faces.append({"id": i, "dim": self.dims[i], "label": _label_json(self.labels[i]),
                          "covers": list(self.below[i])})
        faces.sort(key=lambda f: (f["dim"], f["id"]))
        return {"dimension": self.dim, "f_vector": list(self.f_vector()), "faces": faces}

    def to_dot(self, name="L") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for i in range(len(self)):
            lab = _label_text(self.labels[i]).replace('"', "'")
            lines.append(f'  f{i} [label="{lab}"];')
        for i, lows in enumerate(self.below):
            for j in lows:
                lines.append(f"  f{j} -> f{i};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sort_key(x):
    if isinstance(x, tuple) and all(isinstance(e, str) for e in x):
        return (0, len(x), x)
    if isinstance(x, (frozenset, set)):
        return (1, len(x), sorted(map(_sort_key, x)))
    return (2, 0, repr(x))


def _label_json(lab):
    if isinstance(lab, (frozenset, set)):
        return sorted((_label_json(x) for x in lab), key=lambda v: (len(v), v) if isinstance(v, list) else (0, v))
    if isinstance(lab, tuple) and all(isinstance(e, str) for e in lab):
        return list(lab)
    return repr(lab)


def _label_text(lab):
    if isinstance(lab, (frozenset, set)):
        return "{" + ", ".join(_label_text(x) for x in sorted(lab, key=_sort_key)) + "}"
    if isinstance(lab, tuple) and all(isinstance(e, str) for e in lab):
        return "{" + ",".join(lab) + "}"
    return str(lab)


# -- structural checks --------------------------------------------------------

def euler_check(L: FaceLattice) -> bool:
    """Alternating face count sum equals ``1 - (-1)**d``."""
    d = L.dim
    if d == 0:
        return len(L) == 1
    total = sum((-1) ** i * f for i, f in enumerate(L.f_vector()))
    return total == 1 - (-1) ** d


def graded_check(L: FaceLattice) -> bool:
    if L.dims.count(L.dim) != 1:
        return False
    for i, lows in enumerate(L.below):
        if any(L.dims[j] != L.dims[i] - 1 for j in lows):
            return False
        if L.dims[i] > 0 and not lows:
            return False
    return True


def diamond_check(L: FaceLattice) -> bool:
    """Every length-two interval has exactly two middle elements.

    A formal empty face is adjoined below the vertices, so every edge must
    contain exactly two vertices.
    """
    for i, lows in enumerate(L.below):
        if L.dims[i] == 1 and len(lows) != 2:
            return False
    for a in range(len(L)):
        count: Counter = Counter()
        for b in L.above[a]:
            for c in L.above[b]:
                count[c] += 1
        if any(v != 2 for v in count.values()):
            return False
    return True


# -- isomorphism --------------------------------------------------------------

def _refine(colors, ups, downs):
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in ups[v])),
                 tuple(sorted(colors[w] for w in downs[v]))) for v in range(len(colors))]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        if len(table) == ncls:
            return colors
        ncls = len(table)


def lattice_iso(L1: FaceLattice, L2: FaceLattice, seed: Optional[dict] = None,
                budget: int = DEFAULT_ISO_BUDGET) -> Optional[dict[int, int]]:
    """Find a rank- and incidence-preserving bijection from ``L1`` to ``L2``.

    Exact backtracking search: both lattices are colour-refined together,
    then a vertex of the first non-singleton colour class of ``L1`` is
    paired with each candidate in ``L2`` in turn.  ``seed`` may fix part of
    the map in advance (face index to face index).  Returns ``None`` if no
    isomorphism exists.
    """
    if L1.dim != L2.dim or L1.f_polynomial() != L2.f_polynomial():
        return None
    n = len(L1)
    ups = [tuple(L1.above[i]) for i in range(n)] + [tuple(j + n for j in L2.above[i]) for i in range(n)]
    downs = [tuple(L1.below[i]) for i in range(n)] + [tuple(j + n for j in L2.below[i]) for i in range(n)]
    colors = list(L1.dims) + list(L2.dims)
    top = max(colors) + 1
    for a, b in (seed or {}).items():
        colors[a] = colors[b + n] = top
        top += 1

    nodes = [0]

    def search(colors):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"isomorphism search exceeded {budget} nodes")
        colors = _refine(colors, ups, downs)
        left = Counter(colors[:n])
        if left != Counter(colors[n:]):
            return None
        cell = None
        for c, k in sorted(left.items(), key=lambda kv: (kv[1], kv[0])):
            if k > 1:
                cell = c
                break
        if cell is None:
            pos = {c: v - n for v, c in enumerate(colors[n:], start=n)}
            mapping = {v: pos[colors[v]] for v in range(n)}
            return mapping if _is_iso(L1, L2, mapping) else None
        a = next(v for v in range(n) if colors[v] == cell)
        fresh = max(colors) + 1
        for b in range(n, 2 * n):
            if colors[b] != cell:
                continue
            trial = list(colors)
            trial[a] = trial[b] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    return search(colors)


def _is_iso(L1, L2, m) -> bool:
    if len(set(m.values())) != len(L1):
        return False
    for i in range(len(L1)):
        if L1.dims[i] != L2.dims[m[i]]:
            return False
        if sorted(m[j] for j in L1.below[i]) != sorted(L2.below[m[i]]):
            return False
    return True


def relabel_map(L1: FaceLattice, L2: FaceLattice, m: dict[int, int]) -> dict[Hashable, Hashable]:
    return {L1.labels[i]: L2.labels[j] for i, j in m.items()}
