"""Model semantics of ASP-FO modules and theories.

D-modules are evaluated with the operator ``gamma(m)``: the least interpretation
of the defined predicates closed under the rules when positive body occurrences
are read in the interpretation being built and negative ones in ``m``.  Stable
models are the fixpoints of ``gamma``; the well-founded model is its alternating
fixpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DEFAULT_CAP, CapExceeded, InfiniteUniverse, StructureError, WellFormednessError
from .fo_eval import compile_pair, eval_term, sat
from .structures import (
    PartialStructure,
    Structure,
    expansions,
    ground_term_name,
    herbrand_carrier,
    herbrand_universe,
)
from .syntax import (
    TOP,
    App,
    AspFoTheory,
    Atom,
    ChoiceRule,
    DefineRule,
    DModule,
    Equal,
    Exists,
    Forall,
    Formula,
    GModule,
    HerbrandModule,
    Implies,
    Module,
    Not,
    Symbol,
    TModule,
    Var,
    Vocabulary,
    conj,
    disj,
    exists_all,
    forall_all,
    ordered_free_vars,
    pars,
    pred,
    subformulas,
    term_vars,
)

# -- T-modules and G-modules --------------------------------------------------------


def sat_tmodule(s: Structure, t: TModule) -> bool:
    return sat(s, t.sentence)


def _assignments(names: tuple[str, ...], domain: tuple[str, ...]) -> Iterator[dict[str, str]]:
    for values in itertools.product(domain, repeat=len(names)):
        yield dict(zip(names, values))


def licensed_tuples(s: Structure, g: GModule) -> set[tuple[str, ...]]:
    """Head tuples opened by some rule instance whose body holds in s."""
    out: set[tuple[str, ...]] = set()
    for r in g.rules:
        for env in _assignments(r.universals, s.domain):
            if sat(s, r.body, env):
                out.add(tuple(eval_term(a, s, env) for a in r.head.args))
    return out


def sat_gmodule(s: Structure, g: GModule) -> bool:
    """Every true head tuple is licensed by an instance of some choice rule."""
    if g.head not in s.preds:
        raise StructureError(f"structure does not interpret {g.head}")
    return s.preds[g.head] <= licensed_tuples(s, g)


def _all_var_names(rules: Iterable[DefineRule | ChoiceRule]) -> set[str]:
    names: set[str] = set()
    for r in rules:
        names |= set(r.universals)
        for a in r.head.args:
            names |= set(term_vars(a))
        for sub in subformulas(r.body):
            if isinstance(sub, (Exists, Forall)):
                names.add(sub.var)
        names |= set(ordered_free_vars(r.body))
    return names


def fresh_names(prefix: str, n: int, avoid: set[str]) -> list[str]:
    out: list[str] = []
    i = 1
    while len(out) < n:
        cand = f"{prefix}{i}"
        if cand not in avoid:
            out.append(cand)
        i += 1
    return out


def gcompl(g: GModule) -> Formula:
    """The completion sentence of a G-module: forall Y (P(Y) => disjunction of rule bodies)."""
    ys = fresh_names("Y", g.head.arity, _all_var_names(g.rules))
    cases = []
    for r in g.rules:
        eqs = [Equal(Var(y), t) for y, t in zip(ys, r.head.args)]
        body = [] if r.body == TOP else [r.body]
        cases.append(exists_all(r.universals, conj(eqs + body)))
    return forall_all(ys, Implies(Atom(g.head, tuple(Var(y) for y in ys)), disj(cases)))


# -- D-modules ----------------------------------------------------------------------


class _Operator:
    """gamma for a D-module under fixed parameter values.

    Ground rule instances are computed once; each application of gamma
    evaluates instance bodies with compiled pair evaluation.
    """

    def __init__(self, d: DModule, params: Structure):
        self.d = d
        self.domain = params.domain
        self.defined = sorted(d.defined)
        self.fixed = {k: v for k, v in params.preds.items() if k not in d.defined}
        self.funcs = params.funcs
        needed = pars(d)
        missing = [s for s in needed if s not in self.fixed and s not in self.funcs]
        if missing:
            raise StructureError("parameters not interpreted: " + ", ".join(sorted(map(str, missing))))
        self.instances: list[tuple[Symbol, tuple[str, ...], object, dict]] = []
        view = _View(self.domain, self.funcs)
        for r in d.rules:
            body = compile_pair(r.body)
            for env in _assignments(r.universals, self.domain):
                row = tuple(eval_term(a, view, env) for a in r.head.args)
                self.instances.append((r.head.symbol, row, body, env))

    def __call__(self, m: dict[Symbol, frozenset], chain: list | None = None) -> dict[Symbol, frozenset]:
        neg = {**self.fixed, **m}
        current: dict[Symbol, set] = {s: set() for s in self.defined}
        pos = {**self.fixed, **current}
        ctx = (pos, neg, self.funcs, self.domain)
        pending = list(self.instances)
        if chain is not None:
            chain.append({s: frozenset() for s in self.defined})
        while True:
            fired = []
            rest = []
            for inst in pending:
                sym, row, body, env = inst
                if row in current[sym]:
                    continue
                if body(ctx, dict(env)):
                    fired.append(inst)
                else:
                    rest.append(inst)
            # apply one round at a time so that the chain records the iterates
            new = False
            for sym, row, _, _ in fired:
                if row not in current[sym]:
                    current[sym].add(row)
                    new = True
            if not new:
                break
            if chain is not None:
                chain.append({s: frozenset(v) for s, v in current.items()})
            pending = rest
        return {s: frozenset(v) for s, v in current.items()}

    def structure(self, preds: dict[Symbol, frozenset]) -> Structure:
        return Structure(self.domain, preds, {}, check=False)


class _View:
    __slots__ = ("domain", "funcs", "preds")

    def __init__(self, domain, funcs, preds=None):
        self.domain = domain
        self.funcs = funcs
        self.preds = preds or {}


def _defined_part(d: DModule, m: Structure) -> dict[Symbol, frozenset]:
    out = {}
    for s in d.defined:
        if s not in m.preds:
            raise StructureError(f"interpretation does not cover defined predicate {s}")
        out[s] = m.preds[s]
    return out


def least_fixpoint(d: DModule, params: Structure, m: Structure) -> Structure:
    """Least interpretation of Def(d) satisfying every rule when negative
    occurrences are evaluated in m and parameters in params."""
    if m.domain != params.domain:
        raise StructureError("parameter structure and interpretation have different domains")
    op = _Operator(d, params)
    return op.structure(op(_defined_part(d, m)))


@dataclass(frozen=True)
class StableResult:
    """Outcome of testing one candidate: the fixpoint iterates and whether it is stable."""

    candidate: Structure
    stable: Structure | None
    witness_chain: tuple[Structure, ...] = field(default=())


def check_stable(d: DModule, params: Structure, m: Structure) -> StableResult:
    op = _Operator(d, params)
    chain: list = []
    result = op(_defined_part(d, m), chain)
    structures = tuple(op.structure(c) for c in chain)
    stable = op.structure(result)
    return StableResult(m, stable if result == _defined_part(d, m) else None, structures)


@dataclass(frozen=True)
class WellFoundedResult:
    ps: PartialStructure
    total: bool


def _well_founded(op: _Operator) -> tuple[dict, dict]:
    lower = {s: frozenset() for s in op.defined}
    while True:
        upper = op(lower)
        nxt = op(upper)
        if nxt == lower:
            return lower, upper
        lower = nxt


def well_founded(d: DModule, params: Structure) -> WellFoundedResult:
    """Alternating fixpoint of gamma starting from the all-false interpretation."""
    op = _Operator(d, params)
    lower, upper = _well_founded(op)
    ps = PartialStructure(op.structure(lower), op.structure(upper))
    return WellFoundedResult(ps, lower == upper)


def is_total(d: DModule, params: Structure) -> bool:
    return well_founded(d, params).total


def _candidate_rows(op: _Operator, lower: dict, upper: dict) -> list[tuple[Symbol, tuple]]:
    rows = []
    for s in op.defined:
        for r in sorted(upper[s] - lower[s], key=lambda t: tuple(op.domain.index(e) for e in t)):
            rows.append((s, r))
    return rows


def stable_model(d: DModule, params: Structure, cap: int = DEFAULT_CAP, prune: bool = True) -> list[Structure]:
    """All stable interpretations of Def(d) relative to params.

    Candidates are tested against the fixpoint equation.  With ``prune`` the
    candidates are restricted to lie between the well-founded bounds, which
    every stable model does; ``prune=False`` enumerates every interpretation.
    """
    op = _Operator(d, params)
    if prune:
        lower, upper = _well_founded(op)
    else:
        lower = {s: frozenset() for s in op.defined}
        upper = {s: frozenset(itertools.product(op.domain, repeat=s.arity)) for s in op.defined}
    rows = _candidate_rows(op, lower, upper)
    if 2 ** len(rows) > cap:
        raise CapExceeded("stable model candidates", 2 ** len(rows), cap)
    found = []
    for mask in range(2 ** len(rows)):
        cand = {s: set(v) for s, v in lower.items()}
        for i, (s, r) in enumerate(rows):
            if mask >> i & 1:
                cand[s].add(r)
        frozen = {s: frozenset(v) for s, v in cand.items()}
        if op(frozen) == frozen:
            found.append(op.structure(frozen))
    return sorted(found, key=Structure.sort_key)


def sat_dmodule(s: Structure, d: DModule) -> bool:
    """s projected on Def(d) is stable relative to s's interpretation of the parameters."""
    op = _Operator(d, s)
    m = _defined_part(d, s)
    return op(m) == m


# -- Herbrand modules ---------------------------------------------------------------


def sat_herbrand(s: Structure, h: HerbrandModule) -> bool:
    """Domain closure and unique names: the domain is exactly the ground terms,
    each denoting itself.  An infinite universe has no finite model."""
    for f in h.functions:
        if f not in s.funcs:
            raise StructureError(f"structure does not interpret {f}")
    try:
        universe = herbrand_universe(h.functions)
    except InfiniteUniverse:
        return False
    except StructureError:
        return False
    names = [ground_term_name(t) for t in universe]
    if set(s.domain) != set(names) or len(s.domain) != len(names):
        return False
    return all(s.funcs[t.symbol][()] == ground_term_name(t) for t in universe)


def sat_module(s: Structure, m: Module) -> bool:
    if isinstance(m, TModule):
        return sat_tmodule(s, m)
    if isinstance(m, GModule):
        return sat_gmodule(s, m)
    if isinstance(m, DModule):
        return sat_dmodule(s, m)
    if isinstance(m, HerbrandModule):
        return sat_herbrand(s, m)
    raise TypeError(f"not a module: {m!r}")


def _check_herbrand_modules(theory: AspFoTheory) -> frozenset[Symbol] | None:
    hs = {h.functions for h in theory.herbrand_modules()}
    if len(hs) > 1:
        raise WellFormednessError("theory contains Herbrand modules over different symbol sets")
    return next(iter(hs)) if hs else None


def sat_theory(s: Structure, theory: AspFoTheory) -> bool:
    _check_herbrand_modules(theory)
    return all(sat_module(s, m) for m in theory.modules)


# -- model enumeration --------------------------------------------------------------


def _carrier(theory: AspFoTheory, carrier: Structure | None) -> Structure:
    if carrier is not None:
        return carrier
    sigma = _check_herbrand_modules(theory)
    funcs = set(theory.vocabulary().functions)
    if sigma is not None:
        funcs |= set(sigma)
    if not funcs:
        raise StructureError("no constant symbols: the Herbrand universe is empty")
    return herbrand_carrier(funcs)


def _extra_symbols(theory: AspFoTheory, base: Structure) -> list[Symbol]:
    voc = theory.vocabulary()
    Vocabulary(voc.symbols | set(base.preds) | set(base.funcs))
    return sorted(s for s in voc if s not in base.preds and s not in base.funcs)


def models_naive(theory: AspFoTheory, carrier: Structure | None = None, cap: int = DEFAULT_CAP) -> list[Structure]:
    """All models over the carrier by checking every expansion (reference oracle)."""
    base = _carrier(theory, carrier)
    found = [s for s in expansions(base, _extra_symbols(theory, base), cap) if sat_theory(s, theory)]
    return sorted(found, key=Structure.sort_key)


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            raise CapExceeded("model candidates", None, self.cap)


def models(theory: AspFoTheory, carrier: Structure | None = None, cap: int = DEFAULT_CAP) -> list[Structure]:
    """All models of theory that expand carrier (default: the Herbrand carrier).

    The search assigns predicates module by module: a D-module whose parameters
    are known branches over its stable models, a G-module whose body symbols are
    known branches over subsets of the tuples it licenses, and anything left
    is enumerated exhaustively.  Every candidate is finally checked against the
    whole theory, so the search order affects speed only.  The cap bounds the
    number of candidates generated.
    """
    base = _carrier(theory, carrier)
    extra = _extra_symbols(theory, base)
    budget = _Budget(cap)
    extra_funcs = [s for s in extra if not s.is_predicate]
    todo_preds = frozenset(s for s in extra if s.is_predicate)
    found: set[Structure] = set()
    starts = expansions(base, extra_funcs, cap) if extra_funcs else [base]
    for start in starts:
        budget.spend()
        _search(theory, start, todo_preds, budget, found)
    return sorted(found, key=Structure.sort_key)


def _known(s: Structure, syms: Iterable[Symbol]) -> bool:
    return all(x in s.preds or x in s.funcs for x in syms)


def _search(theory: AspFoTheory, s: Structure, todo: frozenset[Symbol], budget: _Budget, found: set) -> None:
    if not todo:
        if sat_theory(s, theory):
            found.add(s)
        return
    for m in theory.modules:
        if isinstance(m, DModule) and m.defined & todo and _known(s, pars(m)):
            params = Structure(s.domain, {k: v for k, v in s.preds.items() if k not in m.defined}, s.funcs, check=False)
            for sm in stable_model(m, params, cap=budget.cap):
                agrees = all(sm.preds[p] == s.preds[p] for p in m.defined if p in s.preds)
                if not agrees:
                    continue
                budget.spend()
                nxt = Structure(s.domain, {**s.preds, **sm.preds}, s.funcs, check=False)
                _search(theory, nxt, todo - m.defined, budget, found)
            return
    for m in theory.modules:
        if isinstance(m, GModule) and m.head in todo and _known(s, m.symbols() - {m.head}):
            view = Structure(s.domain, {**s.preds, m.head: frozenset()}, s.funcs, check=False)
            rows = sorted(licensed_tuples(view, m), key=s.tuple_key)
            if 2 ** len(rows) > budget.cap:
                raise CapExceeded("model candidates", 2 ** len(rows), budget.cap)
            for mask in range(2 ** len(rows)):
                budget.spend()
                chosen = frozenset(r for i, r in enumerate(rows) if mask >> i & 1)
                nxt = Structure(s.domain, {**s.preds, m.head: chosen}, s.funcs, check=False)
                _search(theory, nxt, todo - {m.head}, budget, found)
            return
    p = min(todo)
    rows = list(itertools.product(s.domain, repeat=p.arity))
    if 2 ** len(rows) > budget.cap:
        raise CapExceeded("model candidates", 2 ** len(rows), budget.cap)
    for mask in range(2 ** len(rows)):
        budget.spend()
        chosen = frozenset(r for i, r in enumerate(rows) if mask >> i & 1)
        nxt = Structure(s.domain, {**s.preds, p: chosen}, s.funcs, check=False)
        _search(theory, nxt, todo - {p}, budget, found)


# -- emulating Herbrand modules -----------------------------------------------------


@dataclass(frozen=True)
class HerbrandEmulation:
    universe_predicate: Symbol
    dmodule: DModule
    tmodule: TModule
    una: tuple[Formula, ...]

    def modules(self) -> list[Module]:
        return [self.dmodule, self.tmodule] + [TModule(f) for f in self.una]


def herbrand_emulation(h: HerbrandModule, avoid: Iterable[Symbol] = ()) -> HerbrandEmulation:
    """Domain closure through an inductive universe predicate, plus unique names axioms."""
    taken = {s.name for s in avoid} | {f.name for f in h.functions}
    name = "U"
    i = 0
    while name in taken:
        i += 1
        name = f"U{i}"
    u = pred(name, 1)
    fs = sorted(h.functions)
    rules = []
    for f in fs:
        xs = [f"X{k}" for k in range(1, f.arity + 1)]
        head = Atom(u, (App(f, tuple(Var(x) for x in xs)),))
        rules.append(DefineRule(tuple(xs), head, conj(Atom(u, (Var(x),)) for x in xs)))
    dmod = DModule(frozenset({u}), tuple(rules))
    tmod = TModule(Forall("X", Atom(u, (Var("X"),))))
    una: list[Formula] = []
    for a, b in itertools.combinations(fs, 2):
        xs = [f"X{k}" for k in range(1, a.arity + 1)]
        ys = [f"Y{k}" for k in range(1, b.arity + 1)]
        eq = Equal(App(a, tuple(Var(x) for x in xs)), App(b, tuple(Var(y) for y in ys)))
        una.append(forall_all(xs + ys, Not(eq)))
    for f in fs:
        if f.arity == 0:
            continue
        xs = [f"X{k}" for k in range(1, f.arity + 1)]
        ys = [f"Y{k}" for k in range(1, f.arity + 1)]
        eq = Equal(App(f, tuple(Var(x) for x in xs)), App(f, tuple(Var(y) for y in ys)))
        same = conj(Equal(Var(x), Var(y)) for x, y in zip(xs, ys))
        una.append(forall_all(xs + ys, Implies(eq, same)))
    return HerbrandEmulation(u, dmod, tmod, tuple(una))


def emulate_herbrand(theory: AspFoTheory) -> tuple[AspFoTheory, list[Symbol]]:
    """Replace each Herbrand module by its emulation; returns the theory and the fresh predicates."""
    out: list[Module] = []
    fresh: list[Symbol] = []
    voc = set(theory.vocabulary().symbols)
    for m in theory.modules:
        if isinstance(m, HerbrandModule):
            em = herbrand_emulation(m, voc)
            voc.add(em.universe_predicate)
            fresh.append(em.universe_predicate)
            out.extend(em.modules())
        else:
            out.append(m)
    return AspFoTheory(tuple(out)), fresh


__all__ = [
    "HerbrandEmulation",
    "StableResult",
    "WellFoundedResult",
    "check_stable",
    "emulate_herbrand",
    "gcompl",
    "herbrand_emulation",
    "is_total",
    "least_fixpoint",
    "licensed_tuples",
    "models",
    "models_naive",
    "sat_dmodule",
    "sat_gmodule",
    "sat_herbrand",
    "sat_module",
    "sat_theory",
    "sat_tmodule",
    "stable_model",
    "well_founded",
]
