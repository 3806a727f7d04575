"""Command-line interface: ``poset-assoc SUBCOMMAND ...``.

Exit codes: 0 success, 1 invalid input, 2 failed check, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import census
from .builder import BuildTrace, build, verify_against_oracle
from .errors import AssocError, BudgetExceeded, InputError, VerificationError
from .generators import GraphSpec, STANDARD, graph_face_poset, parse_building_set, standard
from .lattice import diamond_check, euler_check, graded_check, lattice_iso
from .polytope import face_lattice, validate
from .poset import parse_poset
from .tubing import DEFAULT_BUDGET, dimension, face_poset, maximal_tubing_sizes, tubes, tubings

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    return parse_poset(_read(path))


def _emit(obj, out):
    if isinstance(obj, str):
        out.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _lattice(P, method, budget):
    if method == "build":
        return face_lattice(build(P))
    return face_poset(P, budget=budget)


def cmd_tubes(a, out):
    P = _load(a.poset)
    _emit({"tubes": [list(t) for t in tubes(P)]}, out)


def cmd_tubings(a, out):
    P = _load(a.poset)
    T = tubings(P, max_size=a.max_size, budget=a.budget)
    _emit({"count": len(T), "tubings": [[list(t) for t in tb] for tb in T]}, out)


def cmd_fvector(a, out):
    P = _load(a.poset)
    fv = _lattice(P, a.method, a.budget).f_vector()
    _emit(" ".join(map(str, fv)), out)


def cmd_lattice(a, out):
    P = _load(a.poset)
    L = _lattice(P, a.method, a.budget)
    _emit(L.to_dot() if a.format == "dot" else L.to_dict(), out)


def cmd_build(a, out):
    P = _load(a.poset)
    trace = BuildTrace()
    K = build(P, root=a.root, trace=trace)
    L = face_lattice(K)
    doc = {"dimension": K.dim, "f_vector": list(L.f_vector()),
           "facets": [list(t) for t in sorted(K.facets, key=lambda t: (len(t), t))]}
    if a.schedule:
        doc["schedule"] = trace.levels
    _emit(doc, out)


def cmd_check(a, out):
    P = _load(a.poset)
    K = build(P, root=a.root)
    Lb = face_lattice(K)
    Lo = face_poset(P, budget=a.budget)
    rep = verify_against_oracle(P, root=a.root)
    d = dimension(P)
    checks = [
        ("simple polytope", not validate(K)),
        ("graded", graded_check(Lb) and graded_check(Lo)),
        ("euler relation", euler_check(Lb) and euler_check(Lo)),
        ("diamond property", diamond_check(Lb) and diamond_check(Lo)),
        ("maximal tubings have n-b tubes", maximal_tubing_sizes(P) == {d}),
        ("facet labels = tubes", rep.labels_agree),
        ("oracle ≅ build", rep.isomorphic and rep.facet_map_identity),
    ]
    lines = [f"dimension: {d}", f"f-vector: {' '.join(map(str, Lo.f_vector()))}"]
    lines += [f"{name}: {'yes' if ok else 'NO'}" for name, ok in checks]
    _emit("\n".join(lines), out)
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_CHECK


def cmd_iso(a, out):
    A, B = _load(a.first), _load(a.second)
    m = lattice_iso(_lattice(A, a.method, a.budget), _lattice(B, a.method, a.budget))
    _emit("isomorphic" if m is not None else "not isomorphic", out)


def cmd_gen(a, out):
    P = standard(a.name, a.size)
    text = P.to_dot() if a.format == "dot" else P.dumps()
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(text + ("" if text.endswith("\n") else "\n"))
    else:
        _emit(text, out)


def cmd_from_graph(a, out):
    _emit(graph_face_poset(GraphSpec.from_dict(json.loads(_read(a.graph)))).dumps(), out)


def cmd_from_building_set(a, out):
    _emit(parse_building_set(_read(a.building_set)).dumps(), out)


def cmd_search(a, out):
    ref = _lattice(_load(a.reference), "oracle", a.budget) if a.reference else None
    match = tuple(int(v) for v in a.match_fvector.replace(",", " ").split()) if a.match_fvector else None
    if a.max_elements > 10:
        raise BudgetExceeded("census is limited to --max-elements 10")
    rep = census.search(a.max_elements, ranks=a.ranks, nontrivial=a.nontrivial,
                        match_fvector=match, reference=ref, min_elements=a.min_elements)
    if a.summary:
        rep.pop("classes")
    _emit(rep, out)


def make_parser():
    p = _Parser(prog="poset-assoc", description="Poset associahedra: tubings, truncations, checks.")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cap on enumerated tubings")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("tubes", help="list the tubes of a poset")
    s.add_argument("poset")
    s.set_defaults(func=cmd_tubes)

    s = sub.add_parser("tubings", help="list tubings")
    s.add_argument("poset")
    s.add_argument("--max-size", type=int)
    s.set_defaults(func=cmd_tubings)

    s = sub.add_parser("fvector", help="print the f-vector")
    s.add_argument("poset")
    s.add_argument("--method", choices=["oracle", "build"], default="oracle")
    s.set_defaults(func=cmd_fvector)

    s = sub.add_parser("lattice", help="export the face lattice")
    s.add_argument("poset")
    s.add_argument("--format", choices=["text", "dot"], default="text")
    s.add_argument("--method", choices=["oracle", "build"], default="oracle")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("build", help="run the truncation construction")
    s.add_argument("poset")
    s.add_argument("--schedule", action="store_true", help="include the truncation schedule")
    s.add_argument("--root", help="element removed at the top level")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("check", help="run every invariant and the oracle comparison")
    s.add_argument("poset")
    s.add_argument("--root")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("iso", help="compare the face lattices of two posets")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--method", choices=["oracle", "build"], default="oracle")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("gen", help="write a standard poset")
    s.add_argument("name", choices=sorted(STANDARD))
    s.add_argument("size", type=int)
    s.add_argument("-o", "--output")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("from-graph", help="face poset of a graph document")
    s.add_argument("graph")
    s.set_defaults(func=cmd_from_graph)

    s = sub.add_parser("from-building-set", help="two-rank poset of a building-set document")
    s.add_argument("building_set")
    s.set_defaults(func=cmd_from_building_set)

    s = sub.add_parser("search", help="census of posets up to isomorphism")
    s.add_argument("--ranks", type=int, default=2)
    s.add_argument("--max-elements", type=int, required=True)
    s.add_argument("--min-elements", type=int, default=1)
    s.add_argument("--nontrivial", action="store_true",
                   help="require a bundle of two or more non-minimal elements")
    s.add_argument("--match-fvector", help='e.g. "68 136 88 20"')
    s.add_argument("--reference", help="poset document whose lattice candidates are compared with")
    s.add_argument("--summary", action="store_true", help="omit the per-class listing")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    a = parser.parse_args(argv)
    try:
        return a.func(a, out) or EXIT_OK
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (InputError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK


def run(argv) -> int:
    """Run with ``argv`` and return the exit code (argparse exits are caught)."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
