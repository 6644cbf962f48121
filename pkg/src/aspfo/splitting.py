"""Positive dependency graphs, (proper) splittings of core ASP programs, and
the translation of a properly split program into an ASP-FO theory."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import DEFAULT_CAP, CapExceeded, SplittingError
from .ground_elp import answer_sets
from .semantics import models
from .structures import Structure, describe, true_atoms
from .syntax import (
    CHOICE,
    CONSTRAINT,
    NORMAL,
    AspFoTheory,
    AspProgram,
    AspRule,
    ChoiceRule,
    DefineRule,
    DModule,
    Equal,
    Formula,
    GModule,
    HerbrandModule,
    Neg,
    Neq,
    Not,
    Pos,
    Symbol,
    TModule,
    conj,
    forall_all,
    hd,
)

GENERATE = "generate"
DEFINE = "define"
TEST = "test"


@dataclass(frozen=True)
class DependencyGraph:
    """Edge (P, Q): some rule has P in its head and Q in its positive body."""

    nodes: frozenset[Symbol]
    edges: frozenset[tuple[Symbol, Symbol]]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(sorted(self.nodes))
        g.add_edges_from(sorted(self.edges))
        return g

    def positively_depends(self, p: Symbol, q: Symbol) -> bool:
        """A path of non-zero length from p to q."""
        g = self.to_networkx()
        if p not in g:
            return False
        return any(q == s or nx.has_path(g, s, q) for s in g.successors(p))


def dep_graph(p: AspProgram) -> DependencyGraph:
    edges = set()
    for r in p.rules:
        if r.head is None:
            continue
        for a in r.positive_body:
            edges.add((r.head.symbol, a.symbol))
    return DependencyGraph(frozenset(p.vocabulary.predicates), frozenset(edges))


@dataclass(frozen=True)
class Part:
    kind: str
    indices: tuple[int, ...]
    rules: tuple[AspRule, ...]

    @property
    def heads(self) -> set[Symbol]:
        return hd(self.rules)


@dataclass(frozen=True)
class Splitting:
    program: AspProgram
    parts: tuple[Part, ...]


def _kind(rules: list[AspRule]) -> str:
    kinds = {r.kind for r in rules}
    if kinds == {CONSTRAINT}:
        return TEST
    if kinds == {CHOICE}:
        return GENERATE
    if kinds == {NORMAL}:
        return DEFINE
    return "mixed"


def make_splitting(p: AspProgram, groups: list[list[int]]) -> Splitting:
    """A splitting from groups of rule indices; parts are ordered by their first rule."""
    parts = []
    for g in sorted((sorted(g) for g in groups if g), key=lambda g: g[0]):
        rules = [p.rules[k] for k in g]
        parts.append(Part(_kind(rules), tuple(g), tuple(rules)))
    return Splitting(p, tuple(parts))


def splitting_violations(sp: Splitting) -> list[str]:
    """Violated clauses of the splitting definition, empty if sp is a splitting."""
    p = sp.program
    out: list[str] = []
    seen = [k for part in sp.parts for k in part.indices]
    if sorted(seen) != list(range(len(p.rules))):
        out.append("the parts do not partition the rules")
    owner: dict[Symbol, int] = {}
    for n, part in enumerate(sp.parts):
        if any(r.kind == CONSTRAINT for r in part.rules) and len(part.rules) > 1:
            out.append(f"part {n + 1} contains a constraint but is not a singleton")
        for h in part.heads:
            if owner.setdefault(h, n) != n:
                out.append(f"rules for {h} are spread over several parts")
    g = dep_graph(p).to_networkx()
    for comp in nx.strongly_connected_components(g):
        homes = {owner[s] for s in comp if s in owner}
        if len(homes) > 1:
            names = ", ".join(sorted(str(s) for s in comp if s in owner))
            out.append(f"mutually positively dependent predicates {names} are in different parts")
    return out


def proper_violations(sp: Splitting) -> list[str]:
    """Violated clauses of the proper-splitting definition (including the splitting clauses)."""
    out = splitting_violations(sp)
    graph = dep_graph(sp.program)
    g = graph.to_networkx()
    for n, part in enumerate(sp.parts):
        kinds = {r.kind for r in part.rules}
        if CHOICE in kinds and NORMAL in kinds:
            out.append(f"part {n + 1} mixes choice and normal rules")
        if CHOICE in kinds:
            if len(part.heads) > 1:
                names = ", ".join(sorted(map(str, part.heads)))
                out.append(f"choice part {n + 1} has more than one head predicate: {names}")
            for h in sorted(part.heads):
                if any(s == h or nx.has_path(g, s, h) for s in g.successors(h)):
                    out.append(f"no head predicate of a choice part may positively depend on itself, but {h} does")
                if any(a.symbol == h for r in part.rules for a in r.positive_body + r.negative_body):
                    out.append(f"choice head {h} occurs in the body of its own choice rule")
    return list(dict.fromkeys(out))


def is_splitting(sp: Splitting) -> bool:
    return not splitting_violations(sp)


def is_proper(sp: Splitting) -> bool:
    return not proper_violations(sp)


def finest_proper_splitting(p: AspProgram) -> Splitting:
    """Group rules by the strongly connected component of their head predicate in
    the positive dependency graph; constraints form singleton parts.

    Raises SplittingError naming the first violated clause when the finest
    splitting is not proper (then no splitting is).
    """
    g = dep_graph(p).to_networkx()
    comp_of: dict[Symbol, int] = {}
    for n, comp in enumerate(sorted(nx.strongly_connected_components(g), key=lambda c: min(c))):
        for s in comp:
            comp_of[s] = n
    groups: dict[object, list[int]] = {}
    for k, r in enumerate(p.rules):
        key = ("constraint", k) if r.head is None else ("component", comp_of[r.head.symbol])
        groups.setdefault(key, []).append(k)
    sp = make_splitting(p, list(groups.values()))
    problems = proper_violations(sp)
    if problems:
        raise SplittingError(problems[0])
    return sp


# -- translation --------------------------------------------------------------------


def body_formula(r: AspRule) -> Formula:
    parts: list[Formula] = []
    for b in r.body:
        if isinstance(b, Pos):
            parts.append(b.atom)
        elif isinstance(b, Neg):
            parts.append(Not(b.atom))
        elif isinstance(b, Neq):
            parts.append(Not(Equal(b.left, b.right)))
    return conj(parts)


def part_module(part: Part):
    if part.kind == GENERATE:
        rules = tuple(ChoiceRule.make(r.head, body_formula(r)) for r in part.rules)
        return GModule(rules[0].head.symbol, rules)
    if part.kind == DEFINE:
        rules = tuple(DefineRule.make(r.head, body_formula(r)) for r in part.rules)
        return DModule(frozenset(hd(rules)), rules)
    if part.kind == TEST:
        (r,) = part.rules
        return TModule(forall_all(r.variables(), Not(body_formula(r))))
    raise SplittingError("part mixes rule kinds")


def to_aspfo(p: AspProgram, sp: Splitting | None = None) -> AspFoTheory:
    """The ASP-FO theory of a properly split program: a Herbrand module over the
    function symbols, one module per part, and a D-module with no rules that
    makes the predicates without rules false."""
    if sp is None:
        sp = finest_proper_splitting(p)
    problems = proper_violations(sp)
    if problems:
        raise SplittingError(problems[0])
    modules: list = [HerbrandModule(frozenset(p.vocabulary.functions))]
    modules += [part_module(part) for part in sp.parts]
    modules.append(DModule(frozenset(set(p.vocabulary.predicates) - hd(p.rules)), ()))
    return AspFoTheory(tuple(modules))


# -- dual enumeration ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitReport:
    equal: bool
    answer_sets: tuple[Structure, ...]
    models: tuple[Structure, ...]
    parts: int
    witness: Structure | None = None
    witness_side: str | None = None

    def lines(self) -> list[str]:
        out = [
            f"RESULT: {'EQUAL' if self.equal else 'UNEQUAL'}",
            f"ANSWER_SETS: {len(self.answer_sets)}",
            f"MODELS: {len(self.models)}",
            f"PARTS: {self.parts}",
        ]
        for n, s in enumerate(self.models, 1):
            out.append(f"MODEL {n}: " + " ".join(true_atoms(s)))
        if self.witness is not None:
            out.append(f"WITNESS ({self.witness_side}): {describe(self.witness)}")
        return out


def verify_split(p: AspProgram, cap: int = DEFAULT_CAP, max_atoms: int | None = None) -> SplitReport:
    """Compare the answer sets of p with the Herbrand models of its ASP-FO translation."""
    sp = finest_proper_splitting(p)
    if max_atoms is not None:
        n = len(p.vocabulary.functions)
        atoms = sum(n**s.arity for s in p.vocabulary.predicates)
        if atoms > max_atoms:
            raise CapExceeded("ground atoms", atoms, max_atoms)
    theory = to_aspfo(p, sp)
    left = answer_sets(p, cap)
    right = models(theory, None, cap)
    only_left = [s for s in left if s not in set(right)]
    only_right = [s for s in right if s not in set(left)]
    witness, side = None, None
    if only_left:
        witness, side = only_left[0], "answer set only"
    elif only_right:
        witness, side = only_right[0], "model only"
    return SplitReport(not only_left and not only_right, tuple(left), tuple(right), len(sp.parts), witness, side)
