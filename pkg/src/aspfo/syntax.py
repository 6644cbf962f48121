"""Abstract syntax for terms, FO formulas, rules, core ASP programs and ASP-FO theories.

All syntax values are frozen dataclasses: hashable, compared structurally and
safe to share.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import VocabularyError, WellFormednessError

PREDICATE = "predicate"
FUNCTION = "function"


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    arity: int
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in (PREDICATE, FUNCTION):
            raise ValueError(f"bad symbol kind {self.kind!r}")
        if self.arity < 0:
            raise ValueError("arity must be non-negative")

    @property
    def is_predicate(self) -> bool:
        return self.kind == PREDICATE

    @property
    def is_constant(self) -> bool:
        return self.kind == FUNCTION and self.arity == 0

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


def pred(name: str, arity: int) -> Symbol:
    return Symbol(name, arity, PREDICATE)


def func(name: str, arity: int) -> Symbol:
    return Symbol(name, arity, FUNCTION)


@dataclass(frozen=True)
class Vocabulary:
    """A finite set of symbols; one name denotes at most one symbol."""

    symbols: frozenset[Symbol] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", frozenset(self.symbols))
        seen: dict[str, Symbol] = {}
        for s in sorted(self.symbols):
            other = seen.get(s.name)
            if other is not None and other != s:
                raise VocabularyError(f"symbol {s.name} used as both {other.kind} {other} and {s.kind} {s}")
            seen[s.name] = s

    @staticmethod
    def of(symbols: Iterable[Symbol]) -> "Vocabulary":
        return Vocabulary(frozenset(symbols))

    @property
    def predicates(self) -> list[Symbol]:
        return sorted(s for s in self.symbols if s.kind == PREDICATE)

    @property
    def functions(self) -> list[Symbol]:
        return sorted(s for s in self.symbols if s.kind == FUNCTION)

    def lookup(self, name: str) -> Symbol | None:
        for s in self.symbols:
            if s.name == name:
                return s
        return None

    def union(self, other: "Vocabulary") -> "Vocabulary":
        return Vocabulary(self.symbols | other.symbols)

    def __contains__(self, s: object) -> bool:
        return s in self.symbols

    def __iter__(self) -> Iterator[Symbol]:
        return iter(sorted(self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __le__(self, other: "Vocabulary") -> bool:
        return self.symbols <= other.symbols


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    symbol: Symbol
    args: tuple["Term", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        if self.symbol.kind != FUNCTION:
            raise WellFormednessError(f"{self.symbol} is not a function symbol")
        if len(self.args) != self.symbol.arity:
            raise WellFormednessError(f"{self.symbol} applied to {len(self.args)} arguments")


Term = Union[Var, App]


def const(name: str) -> App:
    return App(func(name, 0), ())


# -- formulas ----------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    symbol: Symbol
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        if self.symbol.kind != PREDICATE:
            raise WellFormednessError(f"{self.symbol} is not a predicate symbol")
        if len(self.args) != self.symbol.arity:
            raise WellFormednessError(f"{self.symbol} applied to {len(self.args)} arguments")


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class FalseF:
    pass


TOP = TrueF()
BOTTOM = FalseF()

Formula = Union[Atom, Equal, Not, And, Or, Implies, Iff, Exists, Forall, TrueF, FalseF]
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is true."""
    out: Formula | None = None
    for p in parts:
        out = p if out is None else And(out, p)
    return TOP if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is false."""
    out: Formula | None = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return BOTTOM if out is None else out


def forall_all(names: Iterable[str], body: Formula) -> Formula:
    for n in reversed(list(names)):
        body = Forall(n, body)
    return body


def exists_all(names: Iterable[str], body: Formula) -> Formula:
    for n in reversed(list(names)):
        body = Exists(n, body)
    return body


def term_vars(t: Term) -> list[str]:
    """Variables of a term in order of first occurrence."""
    out: list[str] = []

    def walk(u: Term) -> None:
        if isinstance(u, Var):
            if u.name not in out:
                out.append(u.name)
        else:
            for a in u.args:
                walk(a)

    walk(t)
    return out


def ordered_free_vars(f: Formula) -> list[str]:
    """Free variables in order of first occurrence."""
    out: list[str] = []

    def add(names: Iterable[str], bound: frozenset[str]) -> None:
        for n in names:
            if n not in bound and n not in out:
                out.append(n)

    def walk(g: Formula, bound: frozenset[str]) -> None:
        if isinstance(g, Atom):
            for a in g.args:
                add(term_vars(a), bound)
        elif isinstance(g, Equal):
            add(term_vars(g.left), bound)
            add(term_vars(g.right), bound)
        elif isinstance(g, Not):
            walk(g.sub, bound)
        elif isinstance(g, BINARY):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, QUANTIFIERS):
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return out


def free_vars(f: Formula) -> frozenset[str]:
    return frozenset(ordered_free_vars(f))


def is_sentence(f: Formula) -> bool:
    return not ordered_free_vars(f)


def term_symbols(t: Term) -> set[Symbol]:
    if isinstance(t, Var):
        return set()
    out = {t.symbol}
    for a in t.args:
        out |= term_symbols(a)
    return out


def symbols(f: Formula) -> set[Symbol]:
    """All predicate and function symbols occurring in f."""
    if isinstance(f, Atom):
        out = {f.symbol}
        for a in f.args:
            out |= term_symbols(a)
        return out
    if isinstance(f, Equal):
        return term_symbols(f.left) | term_symbols(f.right)
    if isinstance(f, Not):
        return symbols(f.sub)
    if isinstance(f, BINARY):
        return symbols(f.left) | symbols(f.right)
    if isinstance(f, QUANTIFIERS):
        return symbols(f.body)
    return set()


def predicates(f: Formula) -> set[Symbol]:
    return {s for s in symbols(f) if s.is_predicate}


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.sub)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def replace(f: Formula, old: Formula, new: Formula) -> Formula:
    """Replace every occurrence of the subformula old by new."""
    if f == old:
        return new
    if isinstance(f, Not):
        return Not(replace(f.sub, old, new))
    if isinstance(f, BINARY):
        return type(f)(replace(f.left, old, new), replace(f.right, old, new))
    if isinstance(f, QUANTIFIERS):
        return type(f)(f.var, replace(f.body, old, new))
    return f


def substitute_term(t: Term, sub: dict[str, Term]) -> Term:
    if isinstance(t, Var):
        return sub.get(t.name, t)
    return App(t.symbol, tuple(substitute_term(a, sub) for a in t.args))


# -- rules -------------------------------------------------------------------


def _closure(head: Atom, body: Formula) -> tuple[str, ...]:
    names: list[str] = []
    for a in head.args:
        for n in term_vars(a):
            if n not in names:
                names.append(n)
    for n in ordered_free_vars(body):
        if n not in names:
            names.append(n)
    return tuple(names)


def _check_closed(kind: str, universals: tuple[str, ...], head: Atom, body: Formula) -> None:
    missing = [n for n in _closure(head, body) if n not in universals]
    if missing:
        raise WellFormednessError(f"{kind} rule leaves variables {', '.join(missing)} unquantified")


@dataclass(frozen=True)
class DefineRule:
    """A define rule: for all universals, head <- body."""

    universals: tuple[str, ...]
    head: Atom
    body: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, "universals", tuple(self.universals))
        _check_closed("define", self.universals, self.head, self.body)

    @staticmethod
    def make(head: Atom, body: Formula = TOP) -> "DefineRule":
        return DefineRule(_closure(head, body), head, body)


@dataclass(frozen=True)
class ChoiceRule:
    """A choice rule: for all universals, {head} <- body."""

    universals: tuple[str, ...]
    head: Atom
    body: Formula

    def __post_init__(self) -> None:
        object.__setattr__(self, "universals", tuple(self.universals))
        _check_closed("choice", self.universals, self.head, self.body)

    @staticmethod
    def make(head: Atom, body: Formula = TOP) -> "ChoiceRule":
        return ChoiceRule(_closure(head, body), head, body)


# -- core ASP ----------------------------------------------------------------


@dataclass(frozen=True)
class Pos:
    atom: Atom


@dataclass(frozen=True)
class Neg:
    atom: Atom


@dataclass(frozen=True)
class Neq:
    left: Term
    right: Term


BodyItem = Union[Pos, Neg, Neq]

NORMAL = "normal"
CHOICE = "choice"
CONSTRAINT = "constraint"


@dataclass(frozen=True)
class AspRule:
    """A core ASP rule; body items keep their source order."""

    kind: str
    head: Atom | None
    body: tuple[BodyItem, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "body", tuple(self.body))
        if self.kind not in (NORMAL, CHOICE, CONSTRAINT):
            raise WellFormednessError(f"unknown rule kind {self.kind!r}")
        if (self.kind == CONSTRAINT) != (self.head is None):
            raise WellFormednessError("constraints and only constraints are headless")

    @property
    def positive_body(self) -> list[Atom]:
        return [b.atom for b in self.body if isinstance(b, Pos)]

    @property
    def negative_body(self) -> list[Atom]:
        return [b.atom for b in self.body if isinstance(b, Neg)]

    @property
    def inequalities(self) -> list[Neq]:
        return [b for b in self.body if isinstance(b, Neq)]

    def variables(self) -> list[str]:
        names: list[str] = []
        terms: list[Term] = list(self.head.args) if self.head is not None else []
        for b in self.body:
            terms.extend(b.atom.args if isinstance(b, (Pos, Neg)) else (b.left, b.right))
        for t in terms:
            for n in term_vars(t):
                if n not in names:
                    names.append(n)
        return names

    def symbols(self) -> set[Symbol]:
        out: set[Symbol] = set()
        if self.head is not None:
            out |= symbols(self.head)
        for b in self.body:
            if isinstance(b, (Pos, Neg)):
                out |= symbols(b.atom)
            else:
                out |= term_symbols(b.left) | term_symbols(b.right)
        return out


@dataclass(frozen=True)
class AspProgram:
    rules: tuple[AspRule, ...]
    vocabulary: Vocabulary

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        for r in self.rules:
            missing = r.symbols() - self.vocabulary.symbols
            if missing:
                raise VocabularyError(f"symbols {sorted(map(str, missing))} missing from vocabulary")

    @staticmethod
    def of(rules: Iterable[AspRule], extra: Iterable[Symbol] = ()) -> "AspProgram":
        rules = tuple(rules)
        syms: set[Symbol] = set(extra)
        for r in rules:
            syms |= r.symbols()
        return AspProgram(rules, Vocabulary(frozenset(syms)))


# -- ASP-FO modules ------------------------------------------------------------


@dataclass(frozen=True)
class GModule:
    head: Symbol
    rules: tuple[ChoiceRule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.head.is_predicate:
            raise WellFormednessError(f"G-module head {self.head} is not a predicate")
        for r in self.rules:
            if r.head.symbol != self.head:
                raise WellFormednessError(
                    f"G-module for {self.head} contains a choice rule for {r.head.symbol}"
                )
            if self.head in predicates(r.body):
                raise WellFormednessError(f"G-module head {self.head} occurs in a rule body")

    def symbols(self) -> set[Symbol]:
        out = {self.head}
        for r in self.rules:
            out |= symbols(r.head) | symbols(r.body)
        return out


@dataclass(frozen=True)
class DModule:
    defined: frozenset[Symbol]
    rules: tuple[DefineRule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "defined", frozenset(self.defined))
        object.__setattr__(self, "rules", tuple(self.rules))
        for s in self.defined:
            if not s.is_predicate:
                raise WellFormednessError(f"defined symbol {s} is not a predicate")
        for r in self.rules:
            if r.head.symbol not in self.defined:
                raise WellFormednessError(f"rule head {r.head.symbol} is not a defined predicate")

    @staticmethod
    def of(rules: Iterable[DefineRule]) -> "DModule":
        rules = tuple(rules)
        return DModule(frozenset(hd(rules)), rules)

    def symbols(self) -> set[Symbol]:
        out = set(self.defined)
        for r in self.rules:
            out |= symbols(r.head) | symbols(r.body)
        return out


@dataclass(frozen=True)
class TModule:
    sentence: Formula

    def __post_init__(self) -> None:
        if not is_sentence(self.sentence):
            raise WellFormednessError("T-module formula is not a sentence")

    def symbols(self) -> set[Symbol]:
        return symbols(self.sentence)


@dataclass(frozen=True)
class HerbrandModule:
    functions: frozenset[Symbol]

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", frozenset(self.functions))
        for s in self.functions:
            if s.kind != FUNCTION:
                raise WellFormednessError(f"Herbrand module symbol {s} is not a function")

    def symbols(self) -> set[Symbol]:
        return set(self.functions)


Module = Union[GModule, DModule, TModule, HerbrandModule]


@dataclass(frozen=True)
class AspFoTheory:
    modules: tuple[Module, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "modules", tuple(self.modules))
        self.vocabulary()
        owners: dict[Symbol, int] = {}
        for m in self.modules:
            specified = {m.head} if isinstance(m, GModule) else set(m.defined) if isinstance(m, DModule) else set()
            for s in specified:
                owners[s] = owners.get(s, 0) + 1
        shared = sorted(str(s) for s, n in owners.items() if n > 1)
        if shared:
            warnings.warn(f"predicates specified by more than one module: {', '.join(shared)}", stacklevel=2)

    def vocabulary(self) -> Vocabulary:
        syms: set[Symbol] = set()
        for m in self.modules:
            syms |= m.symbols()
        return Vocabulary(frozenset(syms))

    def herbrand_modules(self) -> list[HerbrandModule]:
        return [m for m in self.modules if isinstance(m, HerbrandModule)]


# -- derived sets --------------------------------------------------------------


def hd(rules: Iterable[DefineRule | ChoiceRule | AspRule]) -> set[Symbol]:
    """Predicates occurring in rule heads; constraints contribute nothing."""
    return {r.head.symbol for r in rules if r.head is not None}


def pars(d: DModule) -> set[Symbol]:
    """Parameter symbols: every symbol of the rules other than the defined predicates."""
    out: set[Symbol] = set()
    for r in d.rules:
        out |= symbols(r.head) | symbols(r.body)
    return out - d.defined

