"""Finite structures, three-valued truth, and enumeration of structures over a carrier."""

from __future__ import annotations

import enum
import itertools
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import DEFAULT_CAP, CapExceeded, InfiniteUniverse, StructureError
from .syntax import App, Symbol, Term, Vocabulary

Element = str
Row = tuple[Element, ...]
Environment = dict  # variable name -> element


class Structure:
    """A finite structure: non-empty ordered domain, relations and total functions.

    Instances are immutable; equality and hashing are structural.
    """

    __slots__ = ("domain", "preds", "funcs", "_index", "_key")

    def __init__(
        self,
        domain: Iterable[Element],
        preds: Mapping[Symbol, Iterable[Row]] | None = None,
        funcs: Mapping[Symbol, Mapping[Row, Element]] | None = None,
        check: bool = True,
    ):
        domain = tuple(domain)
        index = {d: i for i, d in enumerate(domain)}
        p = {s: frozenset(tuple(r) for r in rows) for s, rows in (preds or {}).items()}
        f = {s: MappingProxyType(dict(t)) for s, t in (funcs or {}).items()}
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "preds", MappingProxyType(p))
        object.__setattr__(self, "funcs", MappingProxyType(f))
        object.__setattr__(self, "_key", None)
        if check:
            self._check()

    def __setattr__(self, name, value):
        raise AttributeError("Structure is immutable")

    def _check(self) -> None:
        if not self.domain:
            raise StructureError("domain must be non-empty")
        if len(self._index) != len(self.domain):
            raise StructureError("duplicate domain elements")
        for s, rows in self.preds.items():
            if not s.is_predicate:
                raise StructureError(f"{s} is not a predicate")
            for r in rows:
                if len(r) != s.arity:
                    raise StructureError(f"tuple {r} has wrong arity for {s}")
                for e in r:
                    if e not in self._index:
                        raise StructureError(f"element {e} of {s} is outside the domain")
        for s, table in self.funcs.items():
            if s.is_predicate:
                raise StructureError(f"{s} is not a function")
            for args, v in table.items():
                if len(args) != s.arity or v not in self._index or any(e not in self._index for e in args):
                    raise StructureError(f"bad entry {args} -> {v} for {s}")
            if len(table) != len(self.domain) ** s.arity:
                raise StructureError(f"function not total: {s}")
        Vocabulary(frozenset(self.preds) | frozenset(self.funcs))

    # -- accessors

    @property
    def vocabulary(self) -> Vocabulary:
        return Vocabulary(frozenset(self.preds) | frozenset(self.funcs))

    def holds(self, s: Symbol, row: Row) -> bool:
        return tuple(row) in self.preds[s]

    def value(self, s: Symbol, args: Row = ()) -> Element:
        return self.funcs[s][tuple(args)]

    def tuple_key(self, row: Row) -> tuple[int, ...]:
        return tuple(self._index[e] for e in row)

    def key(self):
        if self._key is None:
            pk = tuple(sorted((s, tuple(sorted(rows, key=self.tuple_key))) for s, rows in self.preds.items()))
            fk = tuple(sorted((s, tuple(sorted(t.items()))) for s, t in self.funcs.items()))
            object.__setattr__(self, "_key", (self.domain, pk, fk))
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def sort_key(self):
        """Deterministic order: domain, then relations by symbol and tuple position."""
        return (
            self.domain,
            tuple(
                (s.name, s.arity, tuple(sorted(self.tuple_key(r) for r in self.preds[s])))
                for s in sorted(self.preds)
            ),
            tuple((s.name, tuple(sorted((self.tuple_key(a), self._index[v]) for a, v in self.funcs[s].items())))
                  for s in sorted(self.funcs)),
        )

    def __repr__(self) -> str:
        return f"Structure({describe(self)})"

    # -- derived structures

    def replace_preds(self, updates: Mapping[Symbol, Iterable[Row]]) -> "Structure":
        p = dict(self.preds)
        p.update({s: frozenset(rows) for s, rows in updates.items()})
        return Structure(self.domain, p, self.funcs, check=False)


def describe(s: Structure) -> str:
    """Short one-line rendering, used in reports and reprs."""
    parts = []
    for sym in sorted(s.preds):
        rows = sorted(s.preds[sym], key=s.tuple_key)
        if sym.arity == 0:
            parts.append(f"{sym.name}={'true' if rows else 'false'}")
        else:
            shown = ";".join(r[0] if len(r) == 1 else "(" + ",".join(r) + ")" for r in rows)
            parts.append(f"{sym.name}={{{shown}}}")
    for sym in sorted(s.funcs):
        if sym.arity == 0:
            parts.append(f"{sym.name}={s.funcs[sym][()]}")
        else:
            rows = sorted(s.funcs[sym].items(), key=lambda kv: s.tuple_key(kv[0]))
            parts.append(f"{sym.name}={{" + ";".join(",".join(a) + "->" + v for a, v in rows) + "}")
    return " ".join(parts) if parts else "(empty vocabulary)"


def true_atoms(s: Structure) -> list[str]:
    """The true ground atoms of s, written p(a,b), in deterministic order."""
    out = []
    for sym in sorted(s.preds):
        for r in sorted(s.preds[sym], key=s.tuple_key):
            out.append(sym.name + ("(" + ",".join(r) + ")" if r else ""))
    return out


def _same_carrier(a: Structure, b: Structure) -> None:
    if a.domain != b.domain:
        raise StructureError("structures have different domains")


def project(s: Structure, sub: Vocabulary | Iterable[Symbol]) -> Structure:
    syms = set(sub.symbols if isinstance(sub, Vocabulary) else sub)
    unknown = syms - set(s.preds) - set(s.funcs)
    if unknown:
        raise StructureError("unknown symbols: " + ", ".join(sorted(map(str, unknown))))
    return Structure(
        s.domain,
        {k: v for k, v in s.preds.items() if k in syms},
        {k: v for k, v in s.funcs.items() if k in syms},
        check=False,
    )


def compose(a: Structure, b: Structure) -> Structure:
    """The structure over the union vocabulary agreeing with a and with b."""
    _same_carrier(a, b)
    overlap = (set(a.preds) | set(a.funcs)) & (set(b.preds) | set(b.funcs))
    if overlap:
        raise StructureError("vocabularies overlap: " + ", ".join(sorted(map(str, overlap))))
    return Structure(a.domain, {**a.preds, **b.preds}, {**a.funcs, **b.funcs})


def le_t(a: Structure, b: Structure) -> bool:
    """Truth order: same carrier and functions, every relation of a included in b's."""
    if a.domain != b.domain or set(a.preds) != set(b.preds) or dict(a.funcs) != dict(b.funcs):
        raise StructureError("structures are not comparable in the truth order")
    return all(a.preds[s] <= b.preds[s] for s in a.preds)


class TV(enum.IntEnum):
    """Three truth values, ordered f < u < t."""

    F = 0
    U = 1
    T = 2

    def complement(self) -> "TV":
        return TV(2 - self.value)

    def __str__(self) -> str:
        return self.name.lower()


class PartialStructure:
    """A three-valued structure given by a lower and an upper two-valued bound."""

    __slots__ = ("lower", "upper")

    def __init__(self, lower: Structure, upper: Structure):
        if lower.domain != upper.domain or dict(lower.funcs) != dict(upper.funcs):
            raise StructureError("bounds must share domain and function tables")
        if set(lower.preds) != set(upper.preds):
            raise StructureError("bounds must interpret the same predicates")
        if not le_t(lower, upper):
            raise StructureError("lower bound is not below upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def __setattr__(self, name, value):
        raise AttributeError("PartialStructure is immutable")

    @property
    def domain(self) -> tuple[Element, ...]:
        return self.lower.domain

    @property
    def funcs(self):
        return self.lower.funcs

    def value(self, s: Symbol, row: Row) -> TV:
        if row in self.lower.preds[s]:
            return TV.T
        if row in self.upper.preds[s]:
            return TV.U
        return TV.F

    def is_total(self) -> bool:
        return self.lower == self.upper

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PartialStructure) and (self.lower, self.upper) == (other.lower, other.upper)

    def __hash__(self) -> int:
        return hash((self.lower, self.upper))

    def __repr__(self) -> str:
        return f"PartialStructure(lower={describe(self.lower)}; upper={describe(self.upper)})"


# -- Herbrand universes ---------------------------------------------------------


def ground_term_name(t: Term) -> str:
    """Element id of a ground term in a Herbrand structure."""
    if not isinstance(t, App):
        raise StructureError("not a ground term")
    if not t.args:
        return t.symbol.name
    return t.symbol.name + "(" + ",".join(ground_term_name(a) for a in t.args) + ")"


def herbrand_universe(funcs: Iterable[Symbol], depth: int | None = None) -> list[App]:
    """All ground terms over funcs, ordered by depth then by name.

    Any function of arity one or more makes the universe infinite; then a
    depth bound is required and the result holds the terms up to that depth.
    """
    funcs = sorted(funcs)
    constants = [f for f in funcs if f.arity == 0]
    proper = [f for f in funcs if f.arity > 0]
    if not constants:
        raise StructureError("empty universe: no constant symbols")
    if proper and depth is None:
        raise InfiniteUniverse(
            "infinite Herbrand universe: " + ", ".join(map(str, proper)) + " have positive arity"
        )
    levels: list[list[App]] = [sorted((App(c, ()) for c in constants), key=ground_term_name)]
    seen = {ground_term_name(t) for t in levels[0]}
    for _ in range(depth or 0):
        older = [t for lvl in levels for t in lvl]
        fresh = []
        for f in proper:
            for args in itertools.product(older, repeat=f.arity):
                t = App(f, args)
                name = ground_term_name(t)
                if name not in seen:
                    seen.add(name)
                    fresh.append(t)
        levels.append(sorted(fresh, key=ground_term_name))
    return [t for lvl in levels for t in lvl]


def herbrand_carrier(funcs: Iterable[Symbol]) -> Structure:
    """The Herbrand structure over constants only, with an empty predicate vocabulary."""
    funcs = list(funcs)
    universe = herbrand_universe(funcs)
    names = [ground_term_name(t) for t in universe]
    return Structure(names, {}, {f: {(): f.name} for f in funcs})


def _subsets(rows: list[Row]) -> Iterator[frozenset[Row]]:
    for mask in range(2 ** len(rows)):
        yield frozenset(r for i, r in enumerate(rows) if mask >> i & 1)


def count_expansions(domain_size: int, extra: Iterable[Symbol]) -> int:
    total = 1
    for s in extra:
        if s.is_predicate:
            total *= 2 ** (domain_size**s.arity)
        else:
            total *= domain_size ** (domain_size**s.arity)
    return total


def expansions(base: Structure, extra: Vocabulary | Iterable[Symbol], cap: int = DEFAULT_CAP) -> Iterator[Structure]:
    """Every expansion of base to base's vocabulary plus extra, in a fixed order."""
    extra_syms = sorted(extra.symbols if isinstance(extra, Vocabulary) else set(extra))
    clash = set(extra_syms) & (set(base.preds) | set(base.funcs))
    if clash:
        raise StructureError("extra vocabulary overlaps the base: " + ", ".join(sorted(map(str, clash))))
    Vocabulary(frozenset(extra_syms) | frozenset(base.preds) | frozenset(base.funcs))
    n = count_expansions(len(base.domain), extra_syms)
    if n > cap:
        raise CapExceeded("expansions", n, cap)
    return _expand(base, extra_syms)


def _expand(base: Structure, extra_syms: list[Symbol]) -> Iterator[Structure]:
    dom = base.domain
    choices = []
    for s in extra_syms:
        rows = list(itertools.product(dom, repeat=s.arity))
        if s.is_predicate:
            choices.append([(s, sub) for sub in _subsets(rows)])
        else:
            choices.append([(s, dict(zip(rows, vals))) for vals in itertools.product(dom, repeat=len(rows))])
    for combo in itertools.product(*choices):
        preds = dict(base.preds)
        funcs = dict(base.funcs)
        for s, v in combo:
            if s.is_predicate:
                preds[s] = v
            else:
                funcs[s] = v
        yield Structure(dom, preds, funcs, check=False)


def empty_structure(domain: Iterable[Element]) -> Structure:
    return Structure(tuple(domain), {}, {})


def all_structures(voc: Vocabulary | Iterable[Symbol], domain: Iterable[Element], cap: int = DEFAULT_CAP) -> Iterator[Structure]:
    return expansions(empty_structure(domain), voc, cap)


def herbrand_structures(voc: Vocabulary, cap: int = DEFAULT_CAP) -> Iterator[Structure]:
    """All Herbrand structures of a constants-only vocabulary."""
    carrier = herbrand_carrier(voc.functions)
    return expansions(carrier, voc.predicates, cap)


def all_false(domain: tuple[Element, ...], preds: Iterable[Symbol], funcs=None) -> Structure:
    return Structure(domain, {p: frozenset() for p in preds}, funcs or {}, check=False)


def all_true(domain: tuple[Element, ...], preds: Iterable[Symbol], funcs=None) -> Structure:
    return Structure(
        domain, {p: frozenset(itertools.product(domain, repeat=p.arity)) for p in preds}, funcs or {}, check=False
    )
