"""Hypothesis strategies and seeded random generators for small test inputs."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from aspfo.errors import SplittingError
from aspfo.splitting import finest_proper_splitting
from aspfo.structures import PartialStructure, Structure
from aspfo.syntax import (
    BOTTOM,
    CHOICE,
    CONSTRAINT,
    NORMAL,
    TOP,
    And,
    App,
    AspProgram,
    AspRule,
    Atom,
    ChoiceRule,
    DefineRule,
    DModule,
    Equal,
    Exists,
    Forall,
    GModule,
    Iff,
    Implies,
    Neg,
    Neq,
    Not,
    Or,
    Pos,
    Var,
    const,
    func,
    pred,
)

P0 = pred("p", 0)
Q1 = pred("q", 1)
R2 = pred("r", 2)
C0 = func("c", 0)
F1 = func("f", 1)
VOCAB = (P0, Q1, R2, C0, F1)
VARS = ("X", "Y")


# -- hypothesis: formulas and structures ----------------------------------------------

terms = st.recursive(
    st.sampled_from([Var("X"), Var("Y"), App(C0)]),
    lambda inner: inner.map(lambda t: App(F1, (t,))),
    max_leaves=2,
)

atoms = st.one_of(
    st.just(Atom(P0)),
    terms.map(lambda t: Atom(Q1, (t,))),
    st.tuples(terms, terms).map(lambda ts: Atom(R2, ts)),
    st.tuples(terms, terms).map(lambda ts: Equal(*ts)),
    st.sampled_from([TOP, BOTTOM]),
)


def _extend(inner):
    return st.one_of(
        inner.map(Not),
        st.tuples(inner, inner).map(lambda x: And(*x)),
        st.tuples(inner, inner).map(lambda x: Or(*x)),
        st.tuples(inner, inner).map(lambda x: Implies(*x)),
        st.tuples(inner, inner).map(lambda x: Iff(*x)),
        st.tuples(st.sampled_from(VARS), inner).map(lambda x: Exists(*x)),
        st.tuples(st.sampled_from(VARS), inner).map(lambda x: Forall(*x)),
    )


formulas = st.recursive(atoms, _extend, max_leaves=6)


def _rows(domain, arity):
    return list(itertools.product(domain, repeat=arity))


@st.composite
def domains(draw, max_size=3):
    n = draw(st.integers(1, max_size))
    return tuple(f"e{i}" for i in range(1, n + 1))


@st.composite
def func_tables(draw, domain):
    return {
        C0: {(): draw(st.sampled_from(domain))},
        F1: {(d,): draw(st.sampled_from(domain)) for d in domain},
    }


@st.composite
def pred_tables(draw, domain):
    return {s: {r for r in _rows(domain, s.arity) if draw(st.booleans())} for s in (P0, Q1, R2)}


@st.composite
def structures(draw, domain=None):
    domain = domain or draw(domains())
    return Structure(domain, draw(pred_tables(domain)), draw(func_tables(domain)))


@st.composite
def structure_pairs(draw):
    """Two structures on one carrier."""
    domain = draw(domains())
    funcs = draw(func_tables(domain))
    return (
        Structure(domain, draw(pred_tables(domain)), funcs),
        Structure(domain, draw(pred_tables(domain)), funcs),
    )


@st.composite
def partial_structures(draw):
    domain = draw(domains())
    funcs = draw(func_tables(domain))
    lower, upper = {}, {}
    for s in (P0, Q1, R2):
        lower[s], upper[s] = set(), set()
        for r in _rows(domain, s.arity):
            v = draw(st.integers(0, 2))
            if v == 2:
                lower[s].add(r)
            if v >= 1:
                upper[s].add(r)
    return PartialStructure(Structure(domain, lower, funcs), Structure(domain, upper, funcs))


@st.composite
def envs(draw, domain):
    return {v: draw(st.sampled_from(domain)) for v in VARS}


# -- seeded: formulas over a chosen predicate set ---------------------------------------


def random_formula(rng: random.Random, preds, variables, depth: int, quantify=("Z",)):
    """A random formula over preds whose atoms use the given variables."""
    variables = list(variables)
    if depth <= 0 or rng.random() < 0.3:
        if not preds or rng.random() < 0.08:
            return rng.choice([TOP, BOTTOM])
        if variables and rng.random() < 0.08:
            return Equal(Var(rng.choice(variables)), Var(rng.choice(variables)))
        s = rng.choice(preds)
        if s.arity and not variables:
            return rng.choice([TOP, BOTTOM])
        return Atom(s, tuple(Var(rng.choice(variables)) for _ in range(s.arity)))
    kind = rng.choice(["not", "not", "and", "or", "imp", "iff", "ex", "all"])
    if kind == "not":
        return Not(random_formula(rng, preds, variables, depth - 1, quantify))
    if kind in ("ex", "all") and quantify:
        v = rng.choice(quantify)
        body = random_formula(rng, preds, variables + [v], depth - 1, quantify)
        return Exists(v, body) if kind == "ex" else Forall(v, body)
    a = random_formula(rng, preds, variables, depth - 1, quantify)
    b = random_formula(rng, preds, variables, depth - 1, quantify)
    return {"and": And, "or": Or, "imp": Implies, "iff": Iff}.get(kind, And)(a, b)


def random_dmodule(rng: random.Random) -> tuple[DModule, list]:
    """A D-module with at most three predicates and four rules.

    Defined predicates have arity at most 1; parameters have arity at most 2.
    Returns the module and its parameter predicates.
    """
    n_def = rng.choice([1, 2, 2, 3])
    defined = [pred(n, rng.choice([0, 1])) for n in ["a", "b", "c"][:n_def]]
    params = []
    if n_def < 3 and rng.random() < 0.6:
        params = [pred("e", rng.choice([1, 2]))]
    allp = defined + params
    rules = []
    for _ in range(rng.randint(1, 4)):
        h = rng.choice(defined)
        head = Atom(h, tuple(Var("X") for _ in range(h.arity)))
        body = random_formula(rng, allp, ["X"] if h.arity else [], rng.randint(0, 3))
        rules.append(DefineRule.make(head, body))
    return DModule(frozenset(defined), tuple(rules)), params


def param_structures(params, domain):
    """Every structure interpreting params over domain."""
    rows = [(s, r) for s in params for r in _rows(domain, s.arity)]
    for mask in range(2 ** len(rows)):
        tables = {s: set() for s in params}
        for i, (s, r) in enumerate(rows):
            if mask >> i & 1:
                tables[s].add(r)
        yield Structure(domain, tables, {})


def random_gmodule(rng: random.Random) -> tuple[GModule, list, list]:
    """A G-module for g/1 or g/2 with bodies over u/1, w/1 and an optional constant k."""
    arity = rng.choice([1, 1, 2])
    head = pred("g", arity)
    params = [pred("u", 1), pred("w", 1)]
    consts = [func("k", 0)] if rng.random() < 0.4 else []
    rules = []
    for _ in range(rng.randint(0, 3)):
        args = []
        for _ in range(arity):
            choice = rng.random()
            if consts and choice < 0.25:
                args.append(App(consts[0]))
            else:
                args.append(Var(rng.choice(["X", "Y"])))
        hv = sorted({a.name for a in args if isinstance(a, Var)})
        body = random_formula(rng, params, hv or ["X"], rng.randint(0, 2))
        rules.append(ChoiceRule.make(Atom(head, tuple(args)), body))
    return GModule(head, tuple(rules)), params, consts


# -- seeded: splittable core ASP programs -----------------------------------------------

A, B = const("a"), const("b")


def _atom(rng, s):
    return Atom(s, tuple(rng.choice([Var("X"), Var("Y"), A, B]) for _ in range(s.arity)))


def random_splittable_program(rng: random.Random, max_tries: int = 500) -> AspProgram:
    """A constants-only program over {a, b} with at most 10 ground atoms that
    has a proper splitting."""
    for _ in range(max_tries):
        names = ["p", "q", "s", "t", "v"]
        preds = []
        budget = 10
        for n in names[: rng.randint(2, 5)]:
            arity = rng.choice([0, 1, 1])
            size = 1 if arity == 0 else 2
            if budget - size < 0:
                break
            budget -= size
            preds.append(pred(n, arity))
        choice_preds = {s for s in preds if rng.random() < 0.35}
        rules = []
        for s in preds:
            kind = CHOICE if s in choice_preds else NORMAL
            for _ in range(rng.randint(0, 2)):
                head = _atom(rng, s)
                body = []
                for _ in range(rng.randint(0, 2)):
                    b = rng.choice(preds)
                    if kind == CHOICE and b == s:
                        continue
                    body.append(rng.choice([Pos, Pos, Neg])(_atom(rng, b)))
                rules.append(_safe(AspRule(kind, head, tuple(body)), rng))
        for _ in range(rng.randint(0, 2)):
            body = [rng.choice([Pos, Neg])(_atom(rng, rng.choice(preds))) for _ in range(rng.randint(1, 2))]
            if rng.random() < 0.3:
                body.append(Neq(Var("X"), Var("Y")))
            rules.append(_safe(AspRule(CONSTRAINT, None, tuple(body)), rng))
        p = AspProgram.of([r for r in rules if r is not None], extra=[func("a", 0), func("b", 0)] + preds)
        try:
            finest_proper_splitting(p)
        except SplittingError:
            continue
        return p
    raise RuntimeError("no splittable program found")


def _safe(r: AspRule, rng) -> AspRule:
    """Every variable must occur in a positive body atom; ground the others."""
    bound = {n for b in r.body if isinstance(b, Pos) for t in b.atom.args if isinstance(t, Var) for n in [t.name]}

    def fix_t(t):
        return t if not isinstance(t, Var) or t.name in bound else rng.choice([A, B])

    def fix_a(a):
        return Atom(a.symbol, tuple(fix_t(t) for t in a.args))

    body = []
    for b in r.body:
        if isinstance(b, Neq):
            body.append(Neq(fix_t(b.left), fix_t(b.right)))
        else:
            body.append(type(b)(fix_a(b.atom)))
    return AspRule(r.kind, fix_a(r.head) if r.head is not None else None, tuple(body))


# -- systematic: ground normal programs --------------------------------------------------


def ground_normal_rules(atoms, max_body: int = 2):
    """Every normal rule over the atom names with at most max_body body literals."""
    out = []
    lits = [(a, neg) for a in atoms for neg in (False, True)]
    for h in atoms:
        for k in range(max_body + 1):
            for body in itertools.combinations(lits, k):
                if len({a for a, _ in body}) < k:
                    continue
                out.append((h, body))
    return out


def systematic_programs(n_atoms: int, n_rules: int, stride: int = 1, limit: int | None = None):
    """Programs of exactly n_rules distinct rules, every stride-th combination in
    lexicographic order of the rule catalogue."""
    atoms = ["p", "q", "r", "s"][:n_atoms]
    catalogue = ground_normal_rules(atoms)
    combos = itertools.combinations(range(len(catalogue)), n_rules)
    for i, idx in enumerate(itertools.islice(combos, 0, None, stride)):
        if limit is not None and i >= limit:
            return
        yield atoms, [catalogue[j] for j in idx]
