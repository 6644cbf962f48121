"""Extended logic programs with strong and default negation, grounding, the
reduct, and stable sets of believed literals.

This module is also the reference answer-set solver for core ASP programs:
``answer_sets`` grounds a program over its constants and returns the answer
sets as Herbrand structures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DEFAULT_CAP, CapExceeded, InfiniteUniverse, StructureError, WellFormednessError
from .structures import Structure, ground_term_name
from .syntax import (
    CHOICE,
    CONSTRAINT,
    App,
    AspProgram,
    Atom,
    Neq,
    Neg,
    Pos,
    Symbol,
    Term,
    Var,
    Vocabulary,
    term_symbols,
    term_vars,
)

# -- non-ground programs -------------------------------------------------------------


def _check_order(order, npos: int, nnaf: int, nneq: int = 0) -> tuple[str, ...]:
    if not order:
        return ("pos",) * npos + ("naf",) * nnaf + ("neq",) * nneq
    order = tuple(order)
    if (order.count("pos"), order.count("naf"), order.count("neq")) != (npos, nnaf, nneq) or len(order) != npos + nnaf + nneq:
        raise WellFormednessError("body order does not match the body items")
    return order


def _items(order, groups) -> list:
    pos = {k: 0 for k in groups}
    out = []
    for k in order:
        out.append((k, groups[k][pos[k]]))
        pos[k] += 1
    return out


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negative: bool = False


@dataclass(frozen=True)
class ElpRule:
    """head :- positive, not naf, neqs.  A headless rule is a constraint."""

    head: Literal | None
    positive: tuple[Literal, ...] = ()
    naf: tuple[Literal, ...] = ()
    neqs: tuple[Neq, ...] = ()
    choice: bool = False
    order: tuple[str, ...] = ()  # body item kinds in source order: "pos", "naf" or "neq"

    def __post_init__(self) -> None:
        for name in ("positive", "naf", "neqs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "order", _check_order(self.order, len(self.positive), len(self.naf), len(self.neqs)))
        if self.choice and (self.head is None or self.head.negative):
            raise WellFormednessError("a choice rule needs a positive atom as head")

    def body_items(self) -> list[tuple[str, object]]:
        return _items(self.order, {"pos": self.positive, "naf": self.naf, "neq": self.neqs})

    def variables(self) -> list[str]:
        names: list[str] = []
        terms: list[Term] = []
        if self.head is not None:
            terms += self.head.atom.args
        for lit in self.positive + self.naf:
            terms += lit.atom.args
        for n in self.neqs:
            terms += [n.left, n.right]
        for t in terms:
            for v in term_vars(t):
                if v not in names:
                    names.append(v)
        return names

    def symbols(self) -> set[Symbol]:
        out: set[Symbol] = set()
        lits = list(self.positive + self.naf) + ([self.head] if self.head else [])
        for lit in lits:
            out.add(lit.atom.symbol)
            for a in lit.atom.args:
                out |= term_symbols(a)
        for n in self.neqs:
            out |= term_symbols(n.left) | term_symbols(n.right)
        return out


@dataclass(frozen=True)
class ElpProgram:
    rules: tuple[ElpRule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        self.vocabulary()

    def vocabulary(self) -> Vocabulary:
        out: set[Symbol] = set()
        for r in self.rules:
            out |= r.symbols()
        return Vocabulary(frozenset(out))

    def constants(self) -> list[App]:
        """Constants in order of first occurrence."""
        seen: dict[Symbol, None] = {}
        for r in self.rules:
            lits = ([r.head] if r.head else []) + list(r.positive + r.naf)
            terms = [a for lit in lits for a in lit.atom.args] + [t for n in r.neqs for t in (n.left, n.right)]
            for t in terms:
                for s in sorted(term_symbols(t)):
                    if s.arity == 0:
                        seen.setdefault(s)
        return [App(s, ()) for s in seen]


def from_asp(p: AspProgram) -> ElpProgram:
    """Core ASP rules as extended rules without strong negation."""
    rules = []
    for r in p.rules:
        pos = tuple(Literal(b.atom) for b in r.body if isinstance(b, Pos))
        naf = tuple(Literal(b.atom) for b in r.body if isinstance(b, Neg))
        neqs = tuple(b for b in r.body if isinstance(b, Neq))
        head = None if r.kind == CONSTRAINT else Literal(r.head)
        order = tuple("pos" if isinstance(b, Pos) else "naf" if isinstance(b, Neg) else "neq" for b in r.body)
        rules.append(ElpRule(head, pos, naf, neqs, r.kind == CHOICE, order))
    return ElpProgram(tuple(rules))


# -- ground objects ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class GroundAtom:
    symbol: Symbol
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return self.symbol.name + ("(" + ",".join(self.args) + ")" if self.args else "")


@dataclass(frozen=True, order=True)
class GroundLiteral:
    atom: GroundAtom
    negative: bool = False

    def complement(self) -> "GroundLiteral":
        return GroundLiteral(self.atom, not self.negative)

    def __str__(self) -> str:
        return ("-" if self.negative else "") + str(self.atom)


@dataclass(frozen=True)
class GroundRule:
    head: GroundLiteral | None
    positive: tuple[GroundLiteral, ...] = ()
    naf: tuple[GroundLiteral, ...] = ()
    choice: bool = False
    order: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", _check_order(self.order, len(self.positive), len(self.naf)))

    def body_items(self) -> list[tuple[str, GroundLiteral]]:
        return _items(self.order, {"pos": self.positive, "naf": self.naf})

    def __str__(self) -> str:
        body = ", ".join(str(b) if k == "pos" else "not " + str(b) for k, b in self.body_items())
        if self.head is None:
            return f":- {body}."
        head = "{" + str(self.head) + "}" if self.choice else str(self.head)
        return f"{head} :- {body}." if body else f"{head}."


class BelievedLiteralSet(frozenset):
    """A consistent set of ground literals."""

    def __new__(cls, literals: Iterable[GroundLiteral] = ()):
        s = super().__new__(cls, literals)
        for lit in s:
            if lit.complement() in s:
                raise WellFormednessError(f"inconsistent literal set: contains {lit} and {lit.complement()}")
        return s

    def sorted(self) -> list[GroundLiteral]:
        return sorted(self, key=lambda lit: (str(lit.atom), lit.negative))

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.sorted()) + "}"

    def __repr__(self) -> str:
        return f"BelievedLiteralSet({self})"


def is_consistent(literals: Iterable[GroundLiteral]) -> bool:
    s = set(literals)
    return not any(lit.complement() in s for lit in s)


# -- grounding -----------------------------------------------------------------------


def _ground_term(t: Term, env: dict[str, str]) -> str:
    if isinstance(t, Var):
        return env[t.name]
    if t.args:
        raise InfiniteUniverse(f"function symbol {t.symbol} of positive arity in a ground program")
    return t.symbol.name


def _ground_literal(lit: Literal, env: dict[str, str]) -> GroundLiteral:
    return GroundLiteral(GroundAtom(lit.atom.symbol, tuple(_ground_term(a, env) for a in lit.atom.args)), lit.negative)


def ground(
    program: ElpProgram | AspProgram,
    universe: Sequence[Term | str] | None = None,
    simplify: bool = False,
) -> list[GroundRule]:
    """All ground instances of the program's rules over universe (default: its constants).

    An instance whose inequality has equal sides is dropped; satisfied
    inequalities are removed from the body.  With ``simplify``, instances
    whose positive body cannot be derived are dropped and default-negated
    literals that cannot be derived are removed; answer sets are unchanged.
    """
    if isinstance(program, AspProgram):
        program = from_asp(program)
    if universe is None:
        universe = program.constants()
    names = []
    for u in universe:
        if isinstance(u, str):
            names.append(u)
        elif isinstance(u, App) and not u.args:
            names.append(ground_term_name(u))
        else:
            raise InfiniteUniverse("grounding universe may contain constants only")
    out: list[GroundRule] = []
    for r in program.rules:
        vs = r.variables()
        if vs and not names:
            raise StructureError("cannot ground a rule with variables over an empty universe")
        for values in itertools.product(names, repeat=len(vs)):
            env = dict(zip(vs, values))
            if any(_ground_term(n.left, env) == _ground_term(n.right, env) for n in r.neqs):
                continue
            head = _ground_literal(r.head, env) if r.head is not None else None
            out.append(
                GroundRule(
                    head,
                    tuple(_ground_literal(b, env) for b in r.positive),
                    tuple(_ground_literal(b, env) for b in r.naf),
                    r.choice,
                    tuple(k for k in r.order if k != "neq"),
                )
            )
    return _simplify(out) if simplify else out


def _simplify(rules: list[GroundRule]) -> list[GroundRule]:
    possible: set[GroundLiteral] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.head is not None and r.head not in possible and all(b in possible for b in r.positive):
                possible.add(r.head)
                changed = True
    out = []
    for r in rules:
        if all(b in possible for b in r.positive):
            kept = [(k, b) for k, b in r.body_items() if k == "pos" or b in possible]
            out.append(
                GroundRule(
                    r.head,
                    r.positive,
                    tuple(b for k, b in kept if k == "naf"),
                    r.choice,
                    tuple(k for k, _ in kept),
                )
            )
    return out


# -- reduct and stable sets ----------------------------------------------------------


def reduct(rules: Iterable[GroundRule], x: Iterable[GroundLiteral]) -> list[GroundRule]:
    """Default-negation-free rules obtained from rules with respect to x.

    A rule is dropped when one of its default-negated literals is in x; a
    choice rule is also dropped when its head is not in x and otherwise
    becomes a normal rule.  Constraints that survive keep their positive body.
    """
    x = frozenset(x)
    out = []
    for r in rules:
        if any(b in x for b in r.naf):
            continue
        if r.choice:
            if r.head not in x:
                continue
        out.append(GroundRule(r.head, r.positive))
    return out


def closure(rules: Iterable[GroundRule]) -> set[GroundLiteral]:
    """Least set of literals closed under the headed, negation-free rules."""
    rules = [r for r in rules if r.head is not None]
    derived: set[GroundLiteral] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.head not in derived and all(b in derived for b in r.positive):
                derived.add(r.head)
                changed = True
    return derived


def is_stable_set(rules: Sequence[GroundRule], x: Iterable[GroundLiteral]) -> bool:
    """x is the least model of its reduct, consistent, and violates no constraint."""
    x = frozenset(x)
    if not is_consistent(x):
        return False
    red = reduct(rules, x)
    if closure(red) != x:
        return False
    return not any(r.head is None and all(b in x for b in r.positive) for r in red)


def _sort_key(x: BelievedLiteralSet):
    return (len(x), [(str(lit.atom), lit.negative) for lit in x.sorted()])


def stable_sets(rules: Sequence[GroundRule], cap: int = DEFAULT_CAP) -> list[BelievedLiteralSet]:
    """All stable believed literal sets of a ground program, ordered by size then lexicographically.

    The search guesses which default-negated literals and choice heads are
    believed and prunes with lower and upper closures; every leaf is
    confirmed with the reduct test.  The cap bounds the number of search nodes.
    """
    rules = list(rules)
    guess: list[GroundLiteral] = []
    for r in rules:
        for b in r.naf:
            if b not in guess:
                guess.append(b)
        if r.choice and r.head not in guess:
            guess.append(r.head)
    guess.sort()
    constraints = [r for r in rules if r.head is None]
    found: list[BelievedLiteralSet] = []
    nodes = 0

    def bounds(assign: dict[GroundLiteral, bool]) -> tuple[set, set]:
        low, high = [], []
        for r in rules:
            if r.head is None:
                continue
            naf_vals = [assign.get(b) for b in r.naf]
            head_val = assign.get(r.head) if r.choice else True
            if all(v is False for v in naf_vals) and (head_val is True):
                low.append(r)
            if not any(v is True for v in naf_vals) and head_val is not False:
                high.append(r)
        return closure(low), closure(high)

    def search(i: int, assign: dict[GroundLiteral, bool]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded("stable set search nodes", None, cap)
        low, high = bounds(assign)
        if not is_consistent(low):
            return
        for lit, v in assign.items():
            if v and lit not in high:
                return
            if not v and lit in low:
                return
        for c in constraints:
            if all(assign.get(b) is False for b in c.naf) and all(b in low for b in c.positive):
                return
        if i == len(guess):
            if is_stable_set(rules, low):
                found.append(BelievedLiteralSet(low))
            return
        lit = guess[i]
        for v in (False, True):
            assign[lit] = v
            search(i + 1, assign)
            del assign[lit]

    search(0, {})
    return sorted(set(found), key=_sort_key)


# -- answer sets of core ASP programs ------------------------------------------------


def answer_sets(p: AspProgram, cap: int = DEFAULT_CAP) -> list[Structure]:
    """Answer sets of a constants-only core ASP program as Herbrand structures
    over the program's vocabulary."""
    for f in p.vocabulary.functions:
        if f.arity > 0:
            raise InfiniteUniverse(f"function symbol {f} of positive arity: infinite Herbrand universe")
    consts = sorted(p.vocabulary.functions)
    if not consts:
        raise StructureError("program has no constants: the Herbrand universe is empty")
    names = sorted(c.name for c in consts)
    rules = ground(p, names, simplify=True)
    out = []
    for x in stable_sets(rules, cap):
        preds: dict[Symbol, set] = {s: set() for s in p.vocabulary.predicates}
        for lit in x:
            preds[lit.atom.symbol].add(lit.atom.args)
        out.append(Structure(tuple(names), preds, {c: {(): c.name} for c in consts}))
    return sorted(out, key=Structure.sort_key)


def ground_program_atoms(rules: Iterable[GroundRule]) -> list[GroundAtom]:
    atoms: set[GroundAtom] = set()
    for r in rules:
        for lit in ([r.head] if r.head else []) + list(r.positive + r.naf):
            atoms.add(lit.atom)
    return sorted(atoms)


__all__ = [
    "BelievedLiteralSet",
    "ElpProgram",
    "ElpRule",
    "GroundAtom",
    "GroundLiteral",
    "GroundRule",
    "Literal",
    "answer_sets",
    "closure",
    "from_asp",
    "ground",
    "ground_program_atoms",
    "is_stable_set",
    "reduct",
    "stable_sets",
]
