"""Posets from graphs, building sets, hypergraphs and the standard families."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import InputError
from .poset import Poset


@dataclass
class GraphSpec:
    nodes: list
    edges: list = field(default_factory=list)  # 2-sequences; repeats give multiplicity
    loops: list = field(default_factory=list)  # node ids; repeats give multiplicity

    @classmethod
    def from_dict(cls, doc) -> GraphSpec:
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        try:
            nodes = [str(v) for v in doc["nodes"]]
        except (KeyError, TypeError):
            raise InputError("graph document needs a 'nodes' array") from None
        edges = []
        for e in doc.get("edges", []):
            if len(e) != 2:
                raise InputError(f"edge {e!r} is not a pair")
            edges.append((str(e[0]), str(e[1])))
        return cls(nodes, edges, [str(v) for v in doc.get("loops", [])])


def graph_face_poset(G: GraphSpec) -> Poset:
    """Face poset of a pseudograph: nodes below the edges and loops on them.

    Edge ``u-v`` becomes element ``"u-v"`` (``"u-v#2"`` etc. for parallel
    copies), loop at ``v`` becomes ``"v@loop"`` (``"v@loop#2"``, ...).
    """
    nodes = set(G.nodes)
    for v in list(sum(map(list, G.edges), [])) + list(G.loops):
        if v not in nodes:
            raise InputError(f"unknown node {v!r}", "UNKNOWN_NODE")
    elements = list(G.nodes)
    rel = []
    seen: Counter = Counter()
    for u, v in G.edges:
        if u == v:
            raise InputError(f"edge {u}-{v} is a loop; list it under 'loops'")
        a, b = sorted((u, v))
        seen[(a, b)] += 1
        k = seen[(a, b)]
        name = f"{a}-{b}" if k == 1 else f"{a}-{b}#{k}"
        elements.append(name)
        rel += [(a, name), (b, name)]
    loops: Counter = Counter()
    for v in G.loops:
        loops[v] += 1
        k = loops[v]
        name = f"{v}@loop" if k == 1 else f"{v}@loop#{k}"
        elements.append(name)
        rel.append((v, name))
    return Poset(elements, rel)


def _block_name(block) -> str:
    return "[" + ",".join(sorted(block)) + "]"


def check_building_set(ground, blocks) -> list[str]:
    """Violations of the building-set axioms (empty when valid)."""
    ground = set(ground)
    fam = {frozenset(b) for b in blocks}
    problems = []
    for b in fam:
        if not b:
            problems.append("empty block")
        elif not b <= ground:
            problems.append(f"block {sorted(b)} leaves the ground set")
    for s in sorted(ground):
        if frozenset([s]) not in fam:
            problems.append(f"missing singleton {{{s}}}")
    for a in fam:
        for b in fam:
            if a & b and (a | b) not in fam:
                problems.append(f"{sorted(a)} and {sorted(b)} intersect but their union is missing")
    return problems


def hypergraph_poset(ground, family) -> Poset:
    """Ground elements at the bottom, one element above each distinct block covering its members."""
    ground = [str(s) for s in ground]
    fam = sorted({frozenset(map(str, b)) for b in family}, key=lambda b: (len(b), sorted(b)))
    elements = list(ground)
    rel = []
    for b in fam:
        if not b:
            raise InputError("empty block")
        name = _block_name(b)
        elements.append(name)
        rel += [(s, name) for s in sorted(b)]
    return Poset(elements, rel)


def building_set_poset(ground, blocks) -> Poset:
    problems = check_building_set([str(s) for s in ground], [[str(s) for s in b] for b in blocks])
    if problems:
        raise InputError("; ".join(problems[:3]), "NOT_A_BUILDING_SET")
    return hypergraph_poset(ground, blocks)


def parse_building_set(doc) -> Poset:
    if isinstance(doc, (str, bytes)):
        doc = json.loads(doc)
    try:
        return building_set_poset(doc["ground"], doc["blocks"])
    except (KeyError, TypeError):
        raise InputError("building-set document needs 'ground' and 'blocks'") from None


# -- standard families --------------------------------------------------------

def _names(prefix, k):
    w = len(str(k))
    return [f"{prefix}{i:0{w}d}" for i in range(1, k + 1)]


def chain(k: int) -> Poset:
    xs = _names("c", k)
    return Poset(xs, list(zip(xs, xs[1:])))


def antichain(k: int) -> Poset:
    return Poset(_names("a", k))


def zigzag(size: int) -> Poset:
    """``n`` minimal elements and ``n - 1`` maximal ones; the ``i``-th covers minima ``i, i+1``."""
    if size % 2 == 0:
        raise InputError(f"zigzag size must be odd, got {size}", "BAD_SIZE")
    n = (size + 1) // 2
    lo = _names("a", n)
    hi = _names("b", n - 1) if n > 1 else []
    rel = [(lo[i], hi[i]) for i in range(n - 1)] + [(lo[i + 1], hi[i]) for i in range(n - 1)]
    return Poset(lo + hi, rel)


def cross_stack(r: int) -> Poset:
    """Two elements per rank, every element covering both elements of the rank below."""
    w = len(str(r))
    ranks = [[f"r{i:0{w}d}a", f"r{i:0{w}d}b"] for i in range(1, r + 1)]
    rel = [(lo, hi) for below, above in zip(ranks, ranks[1:]) for lo in below for hi in above]
    return Poset(sum(ranks, []), rel)


def fan(n: int) -> Poset:
    """One element covering ``n + 1`` minimal elements."""
    lo = _names("a", n + 1)
    return Poset(lo + ["top"], [(a, "top") for a in lo])


def bundle_over(n: int) -> Poset:
    """One minimal element covered by ``n`` maximal elements."""
    hi = _names("x", n)
    return Poset(["bot"] + hi, [("bot", h) for h in hi])


STANDARD = {
    "chain": chain,
    "antichain": antichain,
    "zigzag": zigzag,
    "cross_stack": cross_stack,
    "fan": fan,
    "bundle_over": bundle_over,
}


def standard(name: str, size: int) -> Poset:
    try:
        fn = STANDARD[name]
    except KeyError:
        raise InputError(f"unknown family {name!r}; choose from {sorted(STANDARD)}") from None
    if size < 1:
        raise InputError(f"size must be >= 1, got {size}", "BAD_SIZE")
    return fn(size)


# -- fixed examples -------------------------------------------------------------

def double_edge() -> Poset:
    """Two points joined by two parallel edges; its polytope is a square."""
    return graph_face_poset(GraphSpec(["u", "v"], [("u", "v"), ("u", "v")]))


def octagonal_example() -> Poset:
    """Six elements in three bundles whose 3-polytope has an octagonal 2-face.

    Minimal ``1, 2``; ``3, 4`` both cover ``2``; ``5, 6`` both cover ``1`` and ``2``.
    """
    return Poset("123456", [("2", "3"), ("2", "4"), ("1", "5"), ("2", "5"), ("1", "6"), ("2", "6")])


def three_rank_example() -> Poset:
    """``octagonal_example`` plus a two-element bundle ``7, 8`` over ``4`` and ``6``.

    A three-rank poset with 8 elements in 4 bundles; f-vector (68, 136, 88, 20).
    """
    base = octagonal_example()
    rel = list(base.covers) + [(lo, hi) for hi in "78" for lo in "46"]
    return Poset(list(base.elements) + ["7", "8"], rel)


def three_rank_example_trivial() -> Poset:
    """``octagonal_example`` plus a single element over ``4`` and ``6`` (same polytope as the base)."""
    base = octagonal_example()
    return Poset(list(base.elements) + ["7"], list(base.covers) + [("4", "7"), ("6", "7")])


def eight_element_bundles() -> Poset:
    """Eight elements in bundles {1,2,3}, {4}, {5}, {6,7,8}."""
    rel = [("1", "4"), ("2", "4"), ("2", "5"), ("3", "5")]
    rel += [(lo, hi) for hi in "678" for lo in "45"]
    return Poset("12345678", rel)
