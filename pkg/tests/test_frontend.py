import random

import pytest
from generators import formulas, random_dmodule, random_gmodule, random_splittable_program, structures
from hypothesis import given
from hypothesis import strategies as st

from aspfo.errors import ParseError
from aspfo.frontend import (
    parse_elp_program,
    parse_formula,
    parse_interpretation,
    parse_program,
    parse_structure,
    parse_theory,
    print_elp_program,
    print_formula,
    print_interpretation,
    print_program,
    print_structure,
    print_theory,
    read_source,
)
from aspfo.syntax import (
    CHOICE,
    CONSTRAINT,
    AspFoTheory,
    AspProgram,
    DModule,
    GModule,
    HerbrandModule,
    Neq,
    TModule,
    func,
    pred,
)
from test_syntax import HC

HC_THEORY = """
herbrand.
gmodule { {In(X,Y)} <- Edge(X,Y). }
dmodule { Node(a). Node(b). Node(c). Edge(a,b). Edge(b,c). Edge(c,a). }
dmodule { T(X,Y) <- In(X,Y). T(X,Y) <- ?Z: (T(X,Z) & T(Z,Y)). }
tmodule { !X: !Y: !Z: ((In(X,Y) & In(X,Z)) => Y = Z) }
tmodule { !X: !Y: !Z: ((In(X,Z) & In(Y,Z)) => X = Y) }
tmodule { !X: !Y: ((Node(X) & Node(Y)) => T(X,Y)) }
"""


def test_parse_program_examples():
    p = parse_program("node(v). edge(v,w). {in(X,Y)} :- edge(X,Y).")
    assert len(p.rules) == 3 and p.rules[2].kind == CHOICE
    assert parse_program("").rules == ()
    with pytest.raises(ParseError) as e:
        parse_program("p(X) :- q(X,).")
    assert (e.value.span.line, e.value.span.column) == (1, 13)


def test_parse_hc_program():
    p = parse_program(HC)
    assert len(p.rules) == 12
    assert p.rules[-1].kind == CONSTRAINT
    assert isinstance(p.rules[9].body[2], Neq)


def test_parse_theory_examples():
    t = parse_theory(HC_THEORY)
    kinds = [type(m) for m in t.modules]
    assert kinds.count(GModule) == 1 and kinds.count(DModule) == 2 and kinds.count(TModule) == 3
    assert kinds.count(HerbrandModule) == 1
    assert t.modules[0].functions == {func("a", 0), func("b", 0), func("c", 0)}
    one = parse_theory("tmodule { p. }")
    assert one.modules == (TModule(parse_formula("p")),)
    with pytest.raises(ParseError, match="single head predicate"):
        parse_theory("gmodule { {p(X)} <- q(X). {r(X)} <- q(X). }")


def test_explicit_defined_set():
    t = parse_theory("dmodule [defined: p/1, s/0] { p(X) <- q(X). }")
    assert t.modules[0].defined == {pred("p", 1), pred("s", 0)}
    t = parse_theory("herbrand(c/0, f/1).")
    assert t.modules[0].functions == {func("c", 0), func("f", 1)}


def test_parse_structure_examples():
    s = parse_structure(
        """domain: n1 n2 n3 c1 c2
        Node = { n1; n2; n3 }
        Colour = { c1; c2 }
        Edge = { (n1,n2); (n2,n3) }
        ColourOf = { n1 -> c1; n2 -> c2; n3 -> c1; c1 -> c1; c2 -> c2 }"""
    )
    assert s.domain == ("n1", "n2", "n3", "c1", "c2")
    assert s.value(func("ColourOf", 1), ("n2",)) == "c2"
    with pytest.raises(ParseError, match="function not total"):
        parse_structure("domain: c1 c2\nColourOf = { c1 -> c1 }")
    with pytest.raises(ParseError, match="domain must be non-empty"):
        parse_structure("domain:\np = true")
    with pytest.raises(ParseError, match="not in the domain"):
        parse_structure("domain: a\nq = { b }")


def test_parse_structure_with_vocabulary():
    voc = parse_theory("tmodule { !X: (q(X) => p) }").vocabulary()
    s = parse_structure("domain: a b\nq = { a }", voc)
    assert s.preds[pred("p", 0)] == frozenset()
    with pytest.raises(ParseError, match="unknown symbol"):
        parse_structure("domain: a\nzz = { a }", voc)


def test_parse_interpretation_examples():
    i = parse_interpretation(
        'pred Node/1 = "#1 is a node"\npred Edge/2 = "there is an edge from #1 to #2"\n'
        'func ColourOf/1 = "the color of #1"\n'
    )
    assert len(i.predicates) + len(i.functions) == 3
    assert parse_interpretation('pred P/0 = "it rains"').predicates[pred("P", 0)] == "it rains"
    with pytest.raises(ParseError, match="placeholder exceeds arity"):
        parse_interpretation('pred P/1 = "uses #2"')
    with pytest.raises(ParseError, match="duplicate"):
        parse_interpretation('pred P/0 = "a"\npred P/0 = "b"')


def test_uppercase_zero_ary_symbols():
    r = parse_elp_program("Aux() :- not Aux(), Node(X).").rules[0]
    assert r.head.atom.symbol == pred("Aux", 0)
    assert print_elp_program(parse_elp_program("Aux() :- not Aux(), Node(X).")).strip() == (
        "Aux() :- not Aux(), Node(X)."
    )


def test_comments_are_ignored():
    assert len(parse_program("% nothing here\np. % trailing\n").rules) == 1


def test_errors_are_deterministic():
    msgs = set()
    for _ in range(3):
        with pytest.raises(ParseError) as e:
            parse_theory("tmodule { p & }")
        msgs.add(str(e.value))
    assert len(msgs) == 1


def test_read_source_stdin():
    assert read_source("-", reader=lambda: "p.") == "p."


# -- round trips ---------------------------------------------------------------------


@given(formulas)
def test_formula_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@given(st.integers(0, 10_000))
def test_program_round_trip(seed):
    p = random_splittable_program(random.Random(seed))
    # symbols that occur in no rule cannot survive printing
    p = AspProgram.of(p.rules)
    assert parse_program(print_program(p)) == p


def test_hc_round_trips():
    p = parse_program(HC)
    assert parse_program(print_program(p)) == p
    t = parse_theory(HC_THEORY)
    assert parse_theory(print_theory(t)) == t


@given(st.integers(0, 10_000))
def test_theory_round_trip(seed):
    rng = random.Random(seed)
    d, _ = random_dmodule(rng)
    g, _, _ = random_gmodule(rng)
    t = AspFoTheory((d, g))
    assert parse_theory(print_theory(t)) == t


@given(structures())
def test_structure_round_trip(s):
    assert parse_structure(print_structure(s)) == s


def test_interpretation_round_trip():
    i = parse_interpretation('pred Edge/2 = "edge \\"from\\" #1 to #2"\nfunc c/0 = "the c"\n')
    assert parse_interpretation(print_interpretation(i)) == i


def test_elp_round_trip():
    text = "Eligible(X) :- HighGPA(X).\n-Eligible(X) :- -FairGPA(X), -HighGPA(X).\n" \
           "Interview(X) :- not Eligible(X), not -Eligible(X).\nFairGPA(david).\n:- p, not q.\n{r}.\n"
    p = parse_elp_program(text)
    assert print_elp_program(p) == text
    assert parse_elp_program(print_elp_program(p)) == p


# -- totality of parsing ---------------------------------------------------------------

_ALPHABET = st.sampled_from(list("pqXY(),.:-{}!?&|~=<>not %\n\"#abc0_") + ["not ", ":-", "<-", "=>", "<=>"])


@given(st.lists(_ALPHABET, max_size=30).map("".join))
def test_parsers_never_crash(text):
    for parse in (parse_program, parse_elp_program, parse_theory, parse_formula, parse_structure,
                  parse_interpretation):
        try:
            parse(text)
        except ParseError as e:
            assert e.span.line >= 1 and e.span.column >= 1
