import pytest
from generators import formulas
from hypothesis import given

from aspfo.errors import VocabularyError, WellFormednessError
from aspfo.frontend import parse_formula, parse_program, parse_theory
from aspfo.syntax import (
    TOP,
    App,
    AspProgram,
    Atom,
    ChoiceRule,
    DefineRule,
    DModule,
    Exists,
    Forall,
    GModule,
    TModule,
    Var,
    Vocabulary,
    free_vars,
    func,
    hd,
    pars,
    pred,
    subformulas,
)

HC = """
{In(X,Y)} :- Edge(X,Y).
Node(a). Node(b). Node(c).
Edge(a,b). Edge(b,c). Edge(c,a).
T(X,Y) :- In(X,Y).
T(X,Y) :- T(X,Z), T(Z,Y).
:- In(X,Y), In(X,Z), Y != Z.
:- In(X,Z), In(Y,Z), X != Y.
:- Node(X), Node(Y), not T(X,Y).
"""


def test_free_vars_examples():
    edge = pred("Edge", 2)
    assert free_vars(Forall("X", Atom(edge, (Var("X"), Var("Y"))))) == {"Y"}
    assert free_vars(Atom(pred("P", 0))) == frozenset()
    f = Exists("X", parse_formula("p(X) & q(Z)"))
    assert free_vars(f) == {"Z"}


def test_pars_examples():
    qr_module = parse_theory("dmodule { p(X) <- ~q(X). q(X) <- !Y: r(Y,X). }").modules[0]
    assert pars(qr_module) == {pred("r", 2)}
    assert pars(DModule(frozenset({pred("P", 0)}))) == set()
    tc = parse_theory("dmodule { T(X,Y) <- In(X,Y). T(X,Y) <- ?Z: (T(X,Z) & T(Z,Y)). }").modules[0]
    assert pars(tc) == {pred("In", 2)}


def test_hd_examples():
    p = parse_program(HC)
    assert hd(p.rules) == {pred("In", 2), pred("Node", 1), pred("Edge", 2), pred("T", 2)}
    assert hd([]) == set()
    assert hd(parse_program(":- p.").rules) == set()


def test_vocabulary_rejects_name_clash():
    with pytest.raises(VocabularyError):
        Vocabulary.of([pred("p", 1), pred("p", 2)])
    with pytest.raises(VocabularyError):
        Vocabulary.of([pred("p", 1), func("p", 1)])


def test_app_checks_arity():
    with pytest.raises(WellFormednessError):
        App(func("f", 1), ())
    with pytest.raises(WellFormednessError):
        App(pred("p", 0), ())


def test_rules_close_over_free_variables():
    r = DefineRule.make(parse_formula("p(X)"), parse_formula("q(X,Y)"))
    assert set(r.universals) == {"X", "Y"}
    with pytest.raises(WellFormednessError):
        DefineRule(("X",), parse_formula("p(X)"), parse_formula("q(X,Y)"))


def test_gmodule_head_must_not_occur_in_body():
    p = pred("p", 1)
    with pytest.raises(WellFormednessError):
        GModule(p, (ChoiceRule.make(Atom(p, (Var("X"),)), Atom(p, (Var("X"),))),))
    with pytest.raises(WellFormednessError):
        GModule(p, (ChoiceRule.make(Atom(pred("r", 1), (Var("X"),)), TOP),))


def test_dmodule_heads_must_be_defined():
    with pytest.raises(WellFormednessError):
        DModule(frozenset({pred("q", 0)}), (DefineRule.make(Atom(pred("p", 0))),))


def test_tmodule_needs_sentence():
    with pytest.raises(WellFormednessError):
        TModule(parse_formula("p(X)"))


def test_program_vocabulary_covers_rules():
    p = parse_program(HC)
    with pytest.raises(VocabularyError):
        AspProgram(p.rules, Vocabulary.of([pred("Node", 1)]))


def test_theory_warns_on_shared_predicate():
    with pytest.warns(UserWarning):
        parse_theory("dmodule { p. } dmodule { p <- q. }")


@given(formulas)
def test_pars_disjoint_from_defined(f):
    head = Atom(pred("h", 0))
    d = DModule(frozenset({head.symbol}), (DefineRule.make(head, f),))
    assert not (pars(d) & d.defined)


@given(formulas)
def test_subformulas_include_self(f):
    subs = list(subformulas(f))
    assert subs[0] == f
