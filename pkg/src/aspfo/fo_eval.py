"""Evaluation of FO formulas in finite structures.

Three independent evaluators live here:

* ``sat``: classical two-valued satisfaction, a direct recursion over the formula.
* ``pair_sat``: satisfaction in a pair of structures, where positive atom
  occurrences are read in the first and negative ones in the second.  Formulas
  are compiled once into closures; this is the hot path of the D-module code.
* ``eval3``: Kleene's three-valued evaluation in a partial structure.

``equiv3`` checks three-valued equivalence by bounded exhaustive search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping

from .errors import DEFAULT_CAP, CapExceeded, EvaluationError, StructureError
from .structures import TV, PartialStructure, Structure, describe
from .syntax import (
    And,
    Atom,
    Equal,
    Exists,
    FalseF,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Symbol,
    Term,
    TrueF,
    Var,
    ordered_free_vars,
    symbols,
)


def eval_term(t: Term, s, env: Mapping[str, str] | None = None) -> str:
    if isinstance(t, Var):
        try:
            return (env or {})[t.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {t.name}") from None
    try:
        table = s.funcs[t.symbol]
    except KeyError:
        raise EvaluationError(f"uninterpreted function symbol {t.symbol}") from None
    return table[tuple(eval_term(a, s, env) for a in t.args)]


def _relation(s, sym: Symbol):
    try:
        return s.preds[sym]
    except KeyError:
        raise EvaluationError(f"uninterpreted predicate symbol {sym}") from None


def sat(s: Structure, f: Formula, env: Mapping[str, str] | None = None) -> bool:
    """Two-valued satisfaction s, env |= f."""
    env = dict(env or {})
    return _sat(s, f, env)


def _sat(s, f: Formula, env: dict) -> bool:
    if isinstance(f, Atom):
        return tuple(eval_term(a, s, env) for a in f.args) in _relation(s, f.symbol)
    if isinstance(f, Equal):
        return eval_term(f.left, s, env) == eval_term(f.right, s, env)
    if isinstance(f, Not):
        return not _sat(s, f.sub, env)
    if isinstance(f, And):
        return _sat(s, f.left, env) and _sat(s, f.right, env)
    if isinstance(f, Or):
        return _sat(s, f.left, env) or _sat(s, f.right, env)
    if isinstance(f, Implies):
        return not _sat(s, f.left, env) or _sat(s, f.right, env)
    if isinstance(f, Iff):
        return _sat(s, f.left, env) == _sat(s, f.right, env)
    if isinstance(f, (Exists, Forall)):
        saved = env.get(f.var, _MISSING)
        want = isinstance(f, Exists)
        result = not want
        for d in s.domain:
            env[f.var] = d
            if _sat(s, f.body, env) == want:
                result = want
                break
        if saved is _MISSING:
            env.pop(f.var, None)
        else:
            env[f.var] = saved
        return result
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    raise TypeError(f"not a formula: {f!r}")


_MISSING = object()


def sat_all(s: Structure, formulas) -> bool:
    """Satisfaction of a set of sentences: every member holds."""
    return all(sat(s, f) for f in formulas)


# -- pair satisfaction -----------------------------------------------------------

# A compiled formula is called as fn(ctx, env) where ctx = (pos, neg, funcs, domain):
# pos and neg map predicate symbols to tuple sets; env is a mutable dict.
Compiled = Callable[[tuple, dict], bool]


def _compile_term(t: Term):
    if isinstance(t, Var):
        name = t.name

        def var(ctx, env):
            try:
                return env[name]
            except KeyError:
                raise EvaluationError(f"unbound variable {name}") from None

        return var
    sym = t.symbol
    args = tuple(_compile_term(a) for a in t.args)

    def app(ctx, env):
        try:
            table = ctx[2][sym]
        except KeyError:
            raise EvaluationError(f"uninterpreted function symbol {sym}") from None
        return table[tuple(a(ctx, env) for a in args)]

    return app


def _compile(f: Formula, positive: bool) -> Compiled:
    if isinstance(f, Atom):
        sym = f.symbol
        args = tuple(_compile_term(a) for a in f.args)
        slot = 0 if positive else 1

        def atom(ctx, env):
            try:
                rel = ctx[slot][sym]
            except KeyError:
                raise EvaluationError(f"uninterpreted predicate symbol {sym}") from None
            return tuple(a(ctx, env) for a in args) in rel

        return atom
    if isinstance(f, Equal):
        left, right = _compile_term(f.left), _compile_term(f.right)
        return lambda ctx, env: left(ctx, env) == right(ctx, env)
    if isinstance(f, Not):
        sub = _compile(f.sub, not positive)
        return lambda ctx, env: not sub(ctx, env)
    if isinstance(f, Implies):
        return _compile(Or(Not(f.left), f.right), positive)
    if isinstance(f, Iff):
        return _compile(Or(And(f.left, f.right), And(Not(f.left), Not(f.right))), positive)
    if isinstance(f, And):
        left, right = _compile(f.left, positive), _compile(f.right, positive)
        return lambda ctx, env: left(ctx, env) and right(ctx, env)
    if isinstance(f, Or):
        left, right = _compile(f.left, positive), _compile(f.right, positive)
        return lambda ctx, env: left(ctx, env) or right(ctx, env)
    if isinstance(f, (Exists, Forall)):
        var = f.var
        body = _compile(f.body, positive)
        want = isinstance(f, Exists)

        def quant(ctx, env):
            saved = env.get(var, _MISSING)
            result = not want
            for d in ctx[3]:
                env[var] = d
                if body(ctx, env) == want:
                    result = want
                    break
            if saved is _MISSING:
                env.pop(var, None)
            else:
                env[var] = saved
            return result

        return quant
    if isinstance(f, TrueF):
        return lambda ctx, env: True
    if isinstance(f, FalseF):
        return lambda ctx, env: False
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=4096)
def compile_pair(f: Formula) -> Compiled:
    """Compile f for pair evaluation; see the module docstring for the calling convention."""
    return _compile(f, True)


def check_pair_carrier(a: Structure, b: Structure) -> None:
    if a.domain != b.domain or dict(a.funcs) != dict(b.funcs):
        raise StructureError("pair evaluation needs a shared domain and shared function tables")


def pair_sat(a: Structure, b: Structure, f: Formula, env: Mapping[str, str] | None = None) -> bool:
    """(a, b), env |= f: positive atom occurrences read in a, negative ones in b."""
    check_pair_carrier(a, b)
    return compile_pair(f)((a.preds, b.preds, a.funcs, a.domain), dict(env or {}))


# -- Kleene three-valued evaluation ------------------------------------------------


def eval3(ps: PartialStructure, f: Formula, env: Mapping[str, str] | None = None) -> TV:
    """Kleene three-valued value of f in the partial structure ps."""
    return _eval3(ps, f, dict(env or {}))


def _eval3(ps: PartialStructure, f: Formula, env: dict) -> TV:
    if isinstance(f, Atom):
        row = tuple(eval_term(a, ps, env) for a in f.args)
        _relation(ps.lower, f.symbol)
        return ps.value(f.symbol, row)
    if isinstance(f, Equal):
        return TV.T if eval_term(f.left, ps, env) == eval_term(f.right, ps, env) else TV.F
    if isinstance(f, Not):
        return _eval3(ps, f.sub, env).complement()
    if isinstance(f, And):
        return min(_eval3(ps, f.left, env), _eval3(ps, f.right, env))
    if isinstance(f, Or):
        return max(_eval3(ps, f.left, env), _eval3(ps, f.right, env))
    if isinstance(f, Implies):
        return max(_eval3(ps, f.left, env).complement(), _eval3(ps, f.right, env))
    if isinstance(f, Iff):
        a, b = _eval3(ps, f.left, env), _eval3(ps, f.right, env)
        return max(min(a, b), min(a.complement(), b.complement()))
    if isinstance(f, (Exists, Forall)):
        saved = env.get(f.var, _MISSING)
        values = []
        for d in ps.domain:
            env[f.var] = d
            values.append(_eval3(ps, f.body, env))
        if saved is _MISSING:
            env.pop(f.var, None)
        else:
            env[f.var] = saved
        if isinstance(f, Exists):
            return max(values, default=TV.F)
        return min(values, default=TV.T)
    if isinstance(f, TrueF):
        return TV.T
    if isinstance(f, FalseF):
        return TV.F
    raise TypeError(f"not a formula: {f!r}")


# -- bounded three-valued equivalence ----------------------------------------------


@dataclass(frozen=True)
class Equiv3Result:
    equivalent: bool
    max_domain: int
    checked: int
    counterexample: PartialStructure | None = None
    env: tuple[tuple[str, str], ...] = ()
    lhs_value: TV | None = None
    rhs_value: TV | None = None

    def describe(self) -> str:
        if self.equivalent:
            return f"equivalent on all {self.checked} partial structures with domain size 1..{self.max_domain}"
        ps = self.counterexample
        assert ps is not None
        parts = [f"domain {{{', '.join(ps.domain)}}}"]
        for sym in sorted(ps.lower.preds):
            vals = []
            for r in itertools.product(ps.domain, repeat=sym.arity):
                vals.append((sym.name + ("(" + ",".join(r) + ")" if r else ""), ps.value(sym, r)))
            parts.append(" ".join(f"{a}={v}" for a, v in vals))
        if ps.funcs:
            parts.append(describe(Structure(ps.domain, {}, ps.funcs, check=False)))
        if self.env:
            parts.append(" ".join(f"{k}={v}" for k, v in self.env))
        return "; ".join(parts) + f"; lhs={self.lhs_value} rhs={self.rhs_value}"


def _count_partial(n: int, syms: list[Symbol], nfree: int) -> int:
    total = n**nfree
    for s in syms:
        rows = n**s.arity
        total *= 3**rows if s.is_predicate else n**rows
    return total


def partial_structures(syms: list[Symbol], domain: tuple[str, ...]):
    """All partial structures over domain for syms (predicates take all three values per tuple)."""
    pred_syms = [s for s in syms if s.is_predicate]
    func_syms = [s for s in syms if not s.is_predicate]
    func_choices = []
    for s in func_syms:
        rows = list(itertools.product(domain, repeat=s.arity))
        func_choices.append([dict(zip(rows, vals)) for vals in itertools.product(domain, repeat=len(rows))])
    atoms = [(s, r) for s in pred_syms for r in itertools.product(domain, repeat=s.arity)]
    for ftables in itertools.product(*func_choices):
        funcs = dict(zip(func_syms, ftables))
        for values in itertools.product((TV.F, TV.U, TV.T), repeat=len(atoms)):
            lower = {s: set() for s in pred_syms}
            upper = {s: set() for s in pred_syms}
            for (s, r), v in zip(atoms, values):
                if v is TV.T:
                    lower[s].add(r)
                if v is not TV.F:
                    upper[s].add(r)
            yield PartialStructure(
                Structure(domain, lower, funcs, check=False), Structure(domain, upper, funcs, check=False)
            )


def equiv3(f: Formula, g: Formula, max_domain: int = 3, cap: int = DEFAULT_CAP) -> Equiv3Result:
    """Check that f and g take the same Kleene value in every partial structure
    with domain size 1..max_domain, under every assignment of their free variables.

    The answer is bounded: it says nothing about larger domains.
    """
    if max_domain < 1:
        raise ValueError("max_domain must be at least 1")
    syms = sorted(symbols(f) | symbols(g))
    free = list(dict.fromkeys(ordered_free_vars(f) + ordered_free_vars(g)))
    needed = sum(_count_partial(n, syms, len(free)) for n in range(1, max_domain + 1))
    if needed > cap:
        raise CapExceeded("three-valued structures", needed, cap)
    checked = 0
    for n in range(1, max_domain + 1):
        domain = tuple(f"d{i}" for i in range(1, n + 1))
        for ps in partial_structures(syms, domain):
            for values in itertools.product(domain, repeat=len(free)):
                env = dict(zip(free, values))
                checked += 1
                a, b = eval3(ps, f, env), eval3(ps, g, env)
                if a != b:
                    return Equiv3Result(False, max_domain, checked, ps, tuple(env.items()), a, b)
    return Equiv3Result(True, max_domain, checked)
