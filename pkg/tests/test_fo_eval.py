import oracles
import pytest
from generators import C0, F1, envs, formulas, partial_structures, structure_pairs, structures
from hypothesis import given
from hypothesis import strategies as st

from aspfo.errors import CapExceeded, StructureError
from aspfo.fo_eval import equiv3, eval3, eval_term, pair_sat, sat
from aspfo.frontend import parse_formula, parse_structure
from aspfo.structures import TV, PartialStructure, Structure, le_t
from aspfo.syntax import TOP, App, Var, func, pred

from test_structures import COL


def test_eval_term_examples():
    col = parse_structure(COL)
    colour_of = func("ColourOf", 1)
    assert eval_term(App(colour_of, (App(func("n1", 0)),)), Structure(col.domain, {}, {
        **col.funcs, func("n1", 0): {(): "n1"}})) == "c1"
    assert eval_term(Var("X"), col, {"X": "n2"}) == "n2"
    s = Structure(("a", "b"), {}, {
        func("f", 1): {("a",): "b", ("b",): "a"},
        func("g", 1): {("a",): "a", ("b",): "a"},
        func("k", 0): {(): "b"},
    })
    t = parse_formula("p(f(g(k)))").args[0]
    assert eval_term(t, s) == "b"


def test_sat_examples():
    col = parse_structure(COL)
    assert sat(col, parse_formula("!X: !Y: (Edge(X,Y) => ~ColourOf(X) = ColourOf(Y))"))
    assert not sat(col, parse_formula("?X: ?Y: (Edge(X,Y) & ColourOf(X) = ColourOf(Y))"))
    assert sat(col, TOP)


def test_pair_sat_reads_negation_in_second():
    p = pred("p", 0)
    a = Structure(("o",), {p: set()})
    b = Structure(("o",), {p: {()}})
    assert not pair_sat(a, b, parse_formula("~p"))
    assert pair_sat(b, a, parse_formula("~p"))
    with pytest.raises(StructureError):
        pair_sat(a, Structure(("x",), {p: set()}), TOP)


def test_eval3_examples():
    p = pred("p", 0)
    ps = PartialStructure(Structure(("o",), {p: set()}), Structure(("o",), {p: {()}}))
    assert eval3(ps, parse_formula("p | ~p")) is TV.U
    assert eval3(ps, parse_formula("~~p")) is TV.U
    total = PartialStructure(Structure(("o",), {p: {()}}), Structure(("o",), {p: {()}}))
    assert eval3(total, parse_formula("p | ~p")) is TV.T


def test_equiv3_examples():
    assert equiv3(parse_formula("~(p & q)"), parse_formula("~p | ~q"), 2).equivalent
    res = equiv3(parse_formula("true"), parse_formula("p | ~p"), 2)
    assert not res.equivalent
    assert res.counterexample.value(pred("p", 0), ()) is TV.U
    for n in (1, 2, 3):
        assert equiv3(parse_formula("~(!X: q(X))"), parse_formula("?X: ~q(X)"), n).equivalent


def test_equiv3_free_variables_and_functions():
    assert equiv3(parse_formula("f(X) = X"), parse_formula("X = f(X)"), 2).equivalent
    assert not equiv3(parse_formula("q(X)"), parse_formula("q(Y)"), 2).equivalent


def test_equiv3_cap():
    with pytest.raises(CapExceeded):
        equiv3(parse_formula("r(X,Y)"), parse_formula("r(Y,X)"), 3, cap=1000)


# -- properties ------------------------------------------------------------------------


@st.composite
def structure_env(draw):
    s = draw(structures())
    return s, draw(envs(s.domain))


@given(structure_env(), formulas)
def test_sat_matches_oracle(se, f):
    s, env = se
    assert sat(s, f, env) == oracles.truth(s, f, env)


@given(structure_env(), formulas)
def test_collapse(se, f):
    s, env = se
    assert pair_sat(s, s, f, env) == sat(s, f, env)


@given(structure_pairs(), formulas, st.data())
def test_pair_sat_matches_oracle(pair, f, data):
    a, b = pair
    env = data.draw(envs(a.domain))
    expected = oracles.pair_truth(dict(a.preds), dict(b.preds), dict(a.funcs), a.domain, f, env)
    assert pair_sat(a, b, f, env) == expected


@given(partial_structures(), formulas, st.data())
def test_bilattice_coherence(ps, f, data):
    env = data.draw(envs(ps.domain))
    lu = pair_sat(ps.lower, ps.upper, f, env)
    ul = pair_sat(ps.upper, ps.lower, f, env)
    assert not (lu and not ul)
    expected = TV.T if lu else TV.U if ul else TV.F
    assert eval3(ps, f, env) is expected
    assert eval3(ps, f, env).value == oracles.kleene(ps, f, env)


@given(partial_structures(), formulas, st.data())
def test_approximation(ps, f, data):
    env = data.draw(envs(ps.domain))
    # any two-valued structure between the bounds
    preds = {}
    for s in ps.lower.preds:
        extra = sorted(ps.upper.preds[s] - ps.lower.preds[s])
        preds[s] = set(ps.lower.preds[s]) | {r for r in extra if data.draw(st.booleans())}
    m = Structure(ps.domain, preds, ps.funcs)
    v = eval3(ps, f, env)
    if v is TV.T:
        assert sat(m, f, env)
    if v is TV.F:
        assert not sat(m, f, env)


@given(structure_pairs(), formulas, st.data())
def test_monotone_first_antimonotone_second(pair, f, data):
    a, b = pair
    env = data.draw(envs(a.domain))
    # a2 >= a and b2 <= b
    a2 = Structure(a.domain, {s: set(a.preds[s]) | set(b.preds[s]) for s in a.preds}, a.funcs)
    b2 = Structure(a.domain, {s: set(a.preds[s]) & set(b.preds[s]) for s in a.preds}, a.funcs)
    assert le_t(a, a2) and le_t(b2, b)
    if pair_sat(a, b, f, env):
        assert pair_sat(a2, b2, f, env)


def test_generators_use_functions():
    # the property tests above exercise function symbols
    assert C0.is_constant and F1.arity == 1
