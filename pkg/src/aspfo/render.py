"""Natural-language readings of formulas, programs and theories.

Four regimes are supported:

``FO``
    the standard reading of first-order logic;
``FO-nonstandard``
    a deliberately perverse reading in which atoms are negated and the dual
    connectives and quantifiers are used, so that satisfaction reads as
    non-satisfaction;
``GL``
    the epistemic reading of extended logic programs, in terms of what an
    agent knows;
``Tarskian``
    the reading of ASP-FO theories as descriptions of possible worlds, with
    G-modules as exceptions to a closed-world default and D-modules as
    (inductive) definitions.

Typography is fixed: connective words are lowercase, variables are rendered
in lowercase, clauses are joined by ", " and list items start with "- ".
Full sentences (theories, claims) are capitalized and end with a period.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import RenderError
from .ground_elp import BelievedLiteralSet, ElpProgram, ElpRule, GroundLiteral, GroundRule
from .syntax import (
    TOP,
    And,
    App,
    AspFoTheory,
    Atom,
    DModule,
    Equal,
    Exists,
    FalseF,
    Forall,
    Formula,
    GModule,
    HerbrandModule,
    Iff,
    Implies,
    Not,
    Or,
    Symbol,
    Term,
    TModule,
    TrueF,
    Var,
    exists_all,
    pars,
    predicates,
    term_vars,
)

FO = "FO"
FO_NONSTANDARD = "FO-nonstandard"
GL = "GL"
TARSKIAN = "Tarskian"

_PLACEHOLDER = re.compile(r"#(\d+)")


class IntendedInterpretation:
    """Templates for predicate and function symbols; ``#k`` stands for the k-th argument."""

    def __init__(self, predicates: Mapping[Symbol, str] | None = None, functions: Mapping[Symbol, str] | None = None):
        self.predicates: dict[Symbol, str] = dict(predicates or {})
        self.functions: dict[Symbol, str] = dict(functions or {})
        for s, t in list(self.predicates.items()) + list(self.functions.items()):
            for m in _PLACEHOLDER.finditer(t):
                k = int(m.group(1))
                if k < 1 or k > s.arity:
                    raise RenderError(f"placeholder exceeds arity: #{k} in template for {s}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntendedInterpretation)
            and self.predicates == other.predicates
            and self.functions == other.functions
        )

    def __repr__(self) -> str:
        return f"IntendedInterpretation({len(self.predicates)} predicates, {len(self.functions)} functions)"

    def _template(self, s: Symbol) -> str | None:
        table = self.predicates if s.is_predicate else self.functions
        if s in table:
            return table[s]
        for k, v in table.items():  # tolerate symbols whose kind was inferred differently
            if k.name == s.name and k.arity == s.arity:
                return v
        return None

    def fill(self, s: Symbol, args: Sequence[str]) -> str:
        t = self._template(s)
        if t is None:
            if s.is_constant:
                return s.name
            raise RenderError(f"no template for {'predicate' if s.is_predicate else 'function'} {s}")
        return _PLACEHOLDER.sub(lambda m: args[int(m.group(1)) - 1], t)


@dataclass(frozen=True)
class Rendering:
    text: str
    regime: str
    notes: tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        return self.text


def _sentence(text: str) -> str:
    return text[:1].upper() + text[1:] + "."


def _var(name: str) -> str:
    return name.lower()


def render_term(t: Term, i: IntendedInterpretation) -> str:
    if isinstance(t, Var):
        return _var(t.name)
    return i.fill(t.symbol, [render_term(a, i) for a in t.args])


def _atom(a: Atom, i: IntendedInterpretation) -> str:
    return i.fill(a.symbol, [render_term(t, i) for t in a.args])


# -- standard FO ------------------------------------------------------------------


def fo_clause(f: Formula, i: IntendedInterpretation) -> str:
    """The standard reading of f as a lowercase clause."""
    if isinstance(f, Atom):
        return _atom(f, i)
    if isinstance(f, Equal):
        return f"{render_term(f.left, i)} and {render_term(f.right, i)} are the same"
    if isinstance(f, Not):
        return "it is not the case that " + fo_clause(f.sub, i)
    if isinstance(f, And):
        return f"{fo_clause(f.left, i)} and {fo_clause(f.right, i)}"
    if isinstance(f, Or):
        return f"{fo_clause(f.left, i)} or {fo_clause(f.right, i)} (or both)"
    if isinstance(f, Implies):
        return f"if {fo_clause(f.left, i)}, then {fo_clause(f.right, i)}"
    if isinstance(f, Iff):
        return f"{fo_clause(f.left, i)} if and only if {fo_clause(f.right, i)}"
    if isinstance(f, Exists):
        return f"there exists an {_var(f.var)} in the universe of discourse such that {fo_clause(f.body, i)}"
    if isinstance(f, Forall):
        return f"for all {_var(f.var)} in the universe of discourse, {fo_clause(f.body, i)}"
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, FalseF):
        return "false"
    raise TypeError(f"not a formula: {f!r}")


def _theory_sentences(x) -> list[Formula] | None:
    if isinstance(x, TModule):
        return [x.sentence]
    if isinstance(x, AspFoTheory):
        out = []
        for m in x.modules:
            if not isinstance(m, TModule):
                raise RenderError("only T-modules have a first-order reading; use the Tarskian regime")
            out.append(m.sentence)
        return out
    if isinstance(x, (list, tuple)):
        return list(x)
    return None


def render_fo(x, i: IntendedInterpretation) -> Rendering:
    """Standard FO reading.  A term or formula yields a bare clause; a theory
    (a T-module, a theory of T-modules, or a list of sentences) yields a sentence."""
    if isinstance(x, (Var, App)):
        return Rendering(render_term(x, i), FO)
    sentences = _theory_sentences(x)
    if sentences is None:
        return Rendering(fo_clause(x, i), FO)
    return Rendering(_sentence(" and ".join(fo_clause(f, i) for f in sentences)), FO)


# -- non-standard FO --------------------------------------------------------------


def fo_nonstandard_clause(f: Formula, i: IntendedInterpretation) -> str:
    if isinstance(f, Atom):
        return "it is not the case that " + _atom(f, i)
    if isinstance(f, Equal):
        return f"{render_term(f.left, i)} and {render_term(f.right, i)} are not the same"
    if isinstance(f, Not):
        return "it is not the case that " + fo_nonstandard_clause(f.sub, i)
    if isinstance(f, And):
        return f"{fo_nonstandard_clause(f.left, i)} or {fo_nonstandard_clause(f.right, i)}"
    if isinstance(f, Or):
        return f"{fo_nonstandard_clause(f.left, i)} and {fo_nonstandard_clause(f.right, i)}"
    if isinstance(f, Implies):
        return fo_nonstandard_clause(Or(Not(f.left), f.right), i)
    if isinstance(f, Iff):
        return fo_nonstandard_clause(Or(And(f.left, f.right), And(Not(f.left), Not(f.right))), i)
    if isinstance(f, Exists):
        return f"for all {_var(f.var)} in the universe of discourse, {fo_nonstandard_clause(f.body, i)}"
    if isinstance(f, Forall):
        return (
            f"there exists an {_var(f.var)} in the universe of discourse such that "
            f"{fo_nonstandard_clause(f.body, i)}"
        )
    # the truth constants are read as their duals, in line with the atom row
    if isinstance(f, TrueF):
        return "false"
    if isinstance(f, FalseF):
        return "true"
    raise TypeError(f"not a formula: {f!r}")


def render_fo_nonstandard(x, i: IntendedInterpretation) -> Rendering:
    if isinstance(x, (Var, App)):
        return Rendering(render_term(x, i), FO_NONSTANDARD)
    sentences = _theory_sentences(x)
    if sentences is None:
        return Rendering(fo_nonstandard_clause(x, i), FO_NONSTANDARD)
    return Rendering(_sentence(" or ".join(fo_nonstandard_clause(f, i) for f in sentences)), FO_NONSTANDARD)


def render_claim(regime: str, structure: str, theory: str) -> Rendering:
    """Reading of the claim that a structure satisfies a theory (or, for GL,
    that a literal set is a stable model of a program)."""
    if regime == FO:
        return Rendering(f"The property {theory} holds in the state-of-affairs {structure}.", FO)
    if regime == FO_NONSTANDARD:
        return Rendering(f"The property {theory} does not hold in the state-of-affairs {structure}.", FO_NONSTANDARD)
    if regime == GL:
        return Rendering(
            f"Given that all the agent knows is {theory}, {structure} could be the set of literals the agent believes.",
            GL,
        )
    if regime == TARSKIAN:
        return Rendering(f"The state of affairs {structure} is possible according to {theory}.", TARSKIAN)
    raise RenderError(f"unknown regime {regime!r}")


def render_structure(s, i: IntendedInterpretation) -> Rendering:
    """A summary of the state of affairs a structure stands for."""
    lines = [f"A state of affairs whose objects are {', '.join(s.domain)}, in which exactly the following hold:"]
    for sym in sorted(s.preds):
        for row in sorted(s.preds[sym], key=s.tuple_key):
            lines.append("- " + i.fill(sym, list(row)))
    for sym in sorted(s.funcs):
        if sym.is_constant and i._template(sym) is None:
            continue
        for args in sorted(s.funcs[sym], key=s.tuple_key):
            lines.append(f"- {i.fill(sym, list(args))} is {s.funcs[sym][args]}")
    return Rendering("\n".join(lines), FO)


# -- Gelfond-Lifschitz epistemic reading ---------------------------------------------


def _gl_literal(atom_text: str, negative: bool) -> str:
    return "it is not the case that " + atom_text if negative else atom_text


def _gl_ground_atom(a, i: IntendedInterpretation) -> str:
    return i.fill(a.symbol, list(a.args))


def _gl_naf(text: str, symbol: Symbol, negative: bool) -> str:
    # a positive propositional atom is known by its name, as in "does not know Aux"
    if symbol.arity == 0 and not negative:
        return "the agent does not know " + symbol.name
    return "the agent does not know that " + _gl_literal(text, negative)


def _gl_rule_text(head: str | None, items: list[tuple[str, str]], choice: bool) -> str:
    if choice:
        raise RenderError("choice rules have no reading in the epistemic regime")
    if head is None:
        parts = [("the agent knows that " + t) if k == "pos" else t for k, t in items]
        return "it is not the case that " + " and ".join(parts)
    if not items:
        return head
    return head + " if " + " and ".join(t for _, t in items)


def _gl_items_schematic(r, i: IntendedInterpretation) -> list[tuple[str, str]]:
    out = []
    for kind, b in r.body_items():
        if kind == "pos":
            out.append(("pos", _gl_literal(_atom(b.atom, i), b.negative)))
        elif kind == "naf":
            out.append(("naf", _gl_naf(_atom(b.atom, i), b.atom.symbol, b.negative)))
        else:
            out.append(("neq", f"{render_term(b.left, i)} and {render_term(b.right, i)} are not the same"))
    return out


def _gl_rule(r, i: IntendedInterpretation) -> tuple[str, bool]:
    if isinstance(r, GroundRule):
        items = []
        for kind, b in r.body_items():
            text = _gl_ground_atom(b.atom, i)
            if kind == "pos":
                items.append((kind, _gl_literal(text, b.negative)))
            else:
                items.append((kind, _gl_naf(text, b.atom.symbol, b.negative)))
        head = None if r.head is None else _gl_literal(_gl_ground_atom(r.head.atom, i), r.head.negative)
        return _gl_rule_text(head, items, r.choice), False
    if isinstance(r, ElpRule):
        head = None if r.head is None else _gl_literal(_atom(r.head.atom, i), r.head.negative)
        text = _gl_rule_text(head, _gl_items_schematic(r, i), r.choice)
        vs = r.variables()
        prefix = "".join(f"for every {_var(v)}, " for v in vs)
        return prefix + text, bool(vs)
    raise TypeError(f"not a rule: {r!r}")


def render_gl(x, i: IntendedInterpretation, atoms: Iterable | None = None) -> Rendering:
    """Epistemic reading of a rule, a program, or a believed literal set.

    Non-ground rules are read schematically, with "for every x" for each
    variable; such renderings carry the note "schematic reading".  For a
    literal set, ``atoms`` lists ground atoms whose absence should also be
    reported.
    """
    if isinstance(x, (ElpRule, GroundRule)):
        text, schematic = _gl_rule(x, i)
        return Rendering(text, GL, ("schematic reading",) if schematic else ())
    if isinstance(x, (ElpProgram, list, tuple)):
        rules = x.rules if isinstance(x, ElpProgram) else x
        lines = ["All the agent knows is:"]
        schematic = False
        for r in rules:
            text, sch = _gl_rule(r, i)
            schematic |= sch
            lines.append("- " + text)
        return Rendering("\n".join(lines), GL, ("schematic reading",) if schematic else ())
    if isinstance(x, (BelievedLiteralSet, frozenset, set)):
        return Rendering("\n".join(_belief_rows(x, i, atoms)), GL)
    raise TypeError(f"no epistemic reading for {type(x).__name__}")


def _belief_rows(x, i: IntendedInterpretation, atoms) -> list[str]:
    lits = set(x)
    universe = sorted({lit.atom for lit in lits} | set(atoms or ()), key=lambda a: (str(a)))
    rows = []
    for a in universe:
        text = _gl_ground_atom(a, i)
        pos, neg = GroundLiteral(a, False), GroundLiteral(a, True)
        if pos in lits:
            rows.append(f"B has the belief that {text} is true")
        elif atoms is not None:
            rows.append(f"B does not have the belief that {text} is true")
        if neg in lits:
            rows.append(f"B has the belief that {text} is false")
        elif atoms is not None:
            rows.append(f"B does not have the belief that {text} is false")
    return rows


# -- Tarskian reading of ASP-FO ------------------------------------------------------


def _join(names: list[str]) -> str:
    if len(names) <= 1:
        return "".join(names)
    return ", ".join(names[:-1]) + " and " + names[-1]


def _gmodule(g: GModule, i: IntendedInterpretation) -> str:
    heads = [r.head.args for r in g.rules]
    first = heads[0] if heads else ()
    shared = (
        bool(heads)
        and all(isinstance(t, Var) for t in first)
        and len({t.name for t in first}) == len(first)
        and all(h == first for h in heads)
    )
    if shared:
        ys = [t.name for t in first]
    else:
        ys = [f"Y{k}" for k in range(1, g.head.arity + 1)]
    generic = Atom(g.head, tuple(Var(y) for y in ys))
    quant = "".join(f"for each {_var(y)}, " for y in ys)
    lines = [
        f"In general, {quant}it is false that {_atom(generic, i)}. "
        "However, there are exceptions as expressed by the following rules:"
    ]
    for r in g.rules:
        head_vars = {v for t in r.head.args for v in term_vars(t)}
        extra = [v for v in r.universals if v not in head_vars]
        body = exists_all(extra, r.body)
        head = _atom(r.head, i)
        if body == TOP:
            lines.append(f"- it might be that {head}")
        else:
            lines.append(f"- if {fo_clause(body, i)}, then it might be that {head}")
    lines.append("- there are no other exceptions")
    return "\n".join(lines)


def _recursive(d: DModule) -> bool:
    edges: dict[Symbol, set[Symbol]] = {p: set() for p in d.defined}
    for r in d.rules:
        edges[r.head.symbol] |= predicates(r.body) & d.defined
    for start in d.defined:
        seen: set[Symbol] = set()
        stack = list(edges[start])
        while stack:
            q = stack.pop()
            if q == start:
                return True
            if q not in seen:
                seen.add(q)
                stack.extend(edges[q])
    return False


def _dmodule(d: DModule, i: IntendedInterpretation) -> str:
    defined = sorted(d.defined)
    params = sorted(s for s in pars(d) if s.is_predicate)
    head = f"We define {_join([s.name for s in defined])}"
    if params:
        head += f" in terms of {_join([s.name for s in params])}"
    if not _recursive(d):
        head += " by the following cases:"
    elif len(defined) > 1:
        head += " by simultaneous induction:"
    else:
        head += " by induction:"
    lines = [head]
    for r in d.rules:
        prefix = "".join(f"for every {_var(v)}, " for v in r.universals)
        text = _atom(r.head, i)
        if r.body != TOP:
            text += " if " + fo_clause(r.body, i)
        lines.append("- " + prefix + text)
    verb = "holds" if len(defined) == 1 else "hold"
    lines.append(f"- in no other cases, {_join([s.name for s in defined])} {verb}")
    return "\n".join(lines)


def _herbrand(h: HerbrandModule) -> str:
    names = _join([f.name if f.arity == 0 else f"{f.name}/{f.arity}" for f in sorted(h.functions)])
    return (
        f"The objects of the universe of discourse are exactly the values of the terms built from {names}, "
        "and different terms denote different objects."
    )


def tarskian_text(m, i: IntendedInterpretation) -> str:
    if isinstance(m, TModule):
        return _sentence(fo_clause(m.sentence, i))
    if isinstance(m, GModule):
        return _gmodule(m, i)
    if isinstance(m, DModule):
        return _dmodule(m, i)
    if isinstance(m, HerbrandModule):
        return _herbrand(m)
    if isinstance(m, AspFoTheory):
        return "\nand\n".join(tarskian_text(x, i) for x in m.modules)
    raise TypeError(f"no Tarskian reading for {type(m).__name__}")


def render_tarskian(x, i: IntendedInterpretation) -> Rendering:
    """Tarskian reading of a module or an ASP-FO theory; modules of a theory are joined by "and"."""
    return Rendering(tarskian_text(x, i), TARSKIAN)


def render(regime: str, x, i: IntendedInterpretation) -> Rendering:
    regimes = {
        FO: render_fo,
        FO_NONSTANDARD: render_fo_nonstandard,
        GL: render_gl,
        TARSKIAN: render_tarskian,
    }
    if regime not in regimes:
        raise RenderError(f"unknown regime {regime!r}")
    return regimes[regime](x, i)
