"""Concrete syntax: parsers and printers for programs, theories, structures and interpretations.

Lexical conventions shared by every format:

* ``%`` starts a comment that runs to the end of the line.
* A name is a run of letters, digits and underscores starting with a letter or digit.
* A name starting with an uppercase letter is a variable, unless it is directly
  followed by ``(``; then it is a predicate or function symbol. Uppercase
  0-ary symbols are therefore written ``Aux()``.
* ``not``, ``true`` and ``false`` are reserved.

Formula operators, loosest first: ``<=>`` (non-associative), ``=>`` (right),
``|`` and ``&`` (left), then the prefix forms ``~``, ``!X:`` and ``?X:``.
A quantifier scopes over the prefix-level formula after it, so write
``!X: (p(X) & q(X))`` to quantify a conjunction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import ParseError, SourceSpan, StructureError, VocabularyError, WellFormednessError
from .ground_elp import ElpProgram, ElpRule, Literal
from .render import IntendedInterpretation
from .structures import Structure
from .syntax import (
    BOTTOM,
    CHOICE,
    CONSTRAINT,
    NORMAL,
    TOP,
    And,
    App,
    AspFoTheory,
    AspProgram,
    AspRule,
    Atom,
    ChoiceRule,
    DefineRule,
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
    Neg,
    Neq,
    Not,
    Or,
    Pos,
    Symbol,
    Term,
    TModule,
    TrueF,
    Var,
    Vocabulary,
    func,
    pred,
)

RESERVED = {"not", "true", "false"}
_PUNCT = ["<=>", ":-", "<-", "=>", "!=", "->", "(", ")", "{", "}", "[", "]", ",", ".", ";", ":", "!", "?", "&", "|", "~", "-", "=", "/"]
_NAME = re.compile(r"[A-Za-z0-9][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, STRING, PUNCT, EOF
    text: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        return repr(self.text)


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r﻿":
            i, col = i + 1, col + 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    break
                if text[j] == "\\" and j + 1 < n and text[j + 1] in '"\\':
                    buf.append(text[j + 1])
                    j += 2
                    continue
                buf.append(text[j])
                j += 1
            if j >= n or text[j] != '"':
                raise ParseError(SourceSpan(file, line, col, j - i), "unterminated string")
            tokens.append(Token("STRING", "".join(buf), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        m = _NAME.match(text, i)
        if m:
            tokens.append(Token("NAME", m.group(), line, col))
            col += m.end() - i
            i = m.end()
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("PUNCT", p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise ParseError(SourceSpan(file, line, col, 1), f"unexpected character {ch!r}")
    tokens.append(Token("EOF", "", line, col))
    return tokens


def is_variable_name(name: str) -> bool:
    return name[:1].isupper()


class _Parser:
    def __init__(self, text: str, file: str):
        self.file = file
        self.tokens = tokenize(text, file)
        self.pos = 0
        self.kinds: dict[str, tuple[Symbol, Token]] = {}

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
        return t

    def span(self, t: Token | None = None) -> SourceSpan:
        t = t or self.tok
        return SourceSpan(self.file, t.line, t.column, max(1, len(t.text)))

    def error(self, message: str, expected: Iterable[str] = (), t: Token | None = None) -> ParseError:
        return ParseError(self.span(t), message, list(expected))

    def at(self, text: str) -> bool:
        return self.tok.kind == "PUNCT" and self.tok.text == text

    def at_word(self, word: str) -> bool:
        return self.tok.kind == "NAME" and self.tok.text == word

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.advance()
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"unexpected {self.tok.describe()}", [repr(text)])
        return self.advance()

    def expect_word(self, word: str) -> Token:
        if not self.at_word(word):
            raise self.error(f"unexpected {self.tok.describe()}", [repr(word)])
        return self.advance()

    def expect_name(self, what: str = "a name") -> Token:
        if self.tok.kind != "NAME":
            raise self.error(f"unexpected {self.tok.describe()}", [what])
        return self.advance()

    def expect_int(self) -> int:
        t = self.expect_name("an integer")
        if not t.text.isdigit():
            raise self.error(f"expected an integer, found {t.text!r}", ["an integer"], t)
        return int(t.text)

    # symbols

    def symbol(self, name: str, arity: int, kind: str, t: Token) -> Symbol:
        if name in RESERVED:
            raise self.error(f"{name!r} is reserved", [], t)
        s = Symbol(name, arity, kind)
        prev = self.kinds.get(name)
        if prev is not None and prev[0] != s:
            p = prev[0]
            raise self.error(
                f"symbol {name} used as {s.kind} of arity {arity} but earlier as {p.kind} of arity {p.arity}",
                [],
                t,
            )
        if prev is None:
            self.kinds[name] = (s, t)
        return s

    def declare(self, s: Symbol, t: Token) -> None:
        self.symbol(s.name, s.arity, s.kind, t)

    # terms and atoms

    def _args(self) -> list[Term]:
        args: list[Term] = []
        self.expect("(")
        if self.accept(")"):
            return args
        args.append(self.term())
        while self.accept(","):
            args.append(self.term())
        self.expect(")")
        return args

    def term(self) -> Term:
        t = self.tok
        if t.kind != "NAME":
            raise self.error(f"unexpected {t.describe()}", ["a term"])
        self.advance()
        if self.at("("):
            args = self._args()
            return App(self.symbol(t.text, len(args), "function", t), tuple(args))
        if is_variable_name(t.text):
            return Var(t.text)
        return App(self.symbol(t.text, 0, "function", t), ())

    def compound(self) -> tuple[Token, list[Term] | None]:
        """A name with optional argument list; classification is left to the caller."""
        t = self.tok
        if t.kind != "NAME":
            raise self.error(f"unexpected {t.describe()}", ["an atom"])
        self.advance()
        if self.at("("):
            return t, self._args()
        return t, None

    def atom_from(self, t: Token, args: list[Term] | None) -> Atom:
        if args is None and is_variable_name(t.text):
            raise self.error(f"variable {t.text} used as an atom", ["an atom"], t)
        args = args or []
        return Atom(self.symbol(t.text, len(args), "predicate", t), tuple(args))

    def term_from(self, t: Token, args: list[Term] | None) -> Term:
        if args is None:
            if is_variable_name(t.text):
                return Var(t.text)
            return App(self.symbol(t.text, 0, "function", t), ())
        return App(self.symbol(t.text, len(args), "function", t), tuple(args))

    def atom(self) -> Atom:
        t, args = self.compound()
        return self.atom_from(t, args)

    # formulas

    def formula(self) -> Formula:
        left = self.implication()
        if self.at("<=>"):
            self.advance()
            right = self.implication()
            if self.at("<=>"):
                raise self.error("'<=>' is not associative; add parentheses")
            return Iff(left, right)
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("=>"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.accept("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.accept("~"):
            return Not(self.unary())
        if self.at("!") or self.at("?"):
            q = self.advance().text
            names = [self._bound_var()]
            while self.accept(","):
                names.append(self._bound_var())
            self.expect(":")
            body = self.unary()
            for n in reversed(names):
                body = Forall(n, body) if q == "!" else Exists(n, body)
            return body
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if self.at_word("true"):
            self.advance()
            return TOP
        if self.at_word("false"):
            self.advance()
            return BOTTOM
        return self.atomic()

    def _bound_var(self) -> str:
        t = self.expect_name("a variable")
        if not is_variable_name(t.text):
            raise self.error(f"quantified variable {t.text} must start with an uppercase letter", ["a variable"], t)
        return t.text

    def atomic(self) -> Formula:
        t, args = self.compound()
        if self.at("=") or self.at("!="):
            op = self.advance().text
            left = self.term_from(t, args)
            right = self.term()
            eq = Equal(left, right)
            return eq if op == "=" else Not(eq)
        return self.atom_from(t, args)

    def at_end(self) -> bool:
        return self.tok.kind == "EOF"


# -- programs --------------------------------------------------------------------


def _asp_body(p: _Parser) -> list:
    items = [_asp_item(p)]
    while p.accept(","):
        items.append(_asp_item(p))
    return items


def _asp_item(p: _Parser):
    if p.at_word("not") and p.peek().kind == "NAME":
        p.advance()
        return Neg(p.atom())
    t, args = p.compound()
    if p.accept("!="):
        return Neq(p.term_from(t, args), p.term())
    return Pos(p.atom_from(t, args))


def parse_program(text: str, file: str = "<program>") -> AspProgram:
    """Parse a core ASP program (normal rules, choice rules, constraints, facts)."""
    p = _Parser(text, file)
    rules: list[AspRule] = []
    while not p.at_end():
        start = p.tok
        if p.accept(":-"):
            body = _asp_body(p)
            p.expect(".")
            rules.append(AspRule(CONSTRAINT, None, tuple(body)))
            continue
        if p.accept("{"):
            head = p.atom()
            p.expect("}")
            kind = CHOICE
        elif p.tok.kind == "NAME":
            head = p.atom()
            kind = NORMAL
        else:
            raise p.error(f"unexpected {start.describe()}", ["a rule"])
        body = []
        if p.accept(":-"):
            body = _asp_body(p)
        elif not p.at("."):
            raise p.error(f"unexpected {p.tok.describe()}", ["':-'", "'.'"])
        p.expect(".")
        rules.append(AspRule(kind, head, tuple(body)))
    return AspProgram.of(rules)


def parse_elp_program(text: str, file: str = "<program>") -> ElpProgram:
    """Parse an extended logic program: like core ASP, plus strong negation written ``-p(a)``."""
    p = _Parser(text, file)

    def literal() -> Literal:
        neg = p.accept("-")
        return Literal(p.atom(), neg)

    def body() -> tuple[list[Literal], list[Literal], list[Neq], tuple[str, ...]]:
        pos: list[Literal] = []
        naf: list[Literal] = []
        neqs: list[Neq] = []
        order: list[str] = []
        while True:
            if p.at_word("not") and (p.peek().kind == "NAME" or (p.peek().kind == "PUNCT" and p.peek().text == "-")):
                p.advance()
                naf.append(literal())
                order.append("naf")
            elif p.at("-"):
                pos.append(literal())
                order.append("pos")
            else:
                t, args = p.compound()
                if p.accept("!="):
                    neqs.append(Neq(p.term_from(t, args), p.term()))
                    order.append("neq")
                else:
                    pos.append(Literal(p.atom_from(t, args), False))
                    order.append("pos")
            if not p.accept(","):
                return pos, naf, neqs, tuple(order)

    rules: list[ElpRule] = []
    while not p.at_end():
        head: Literal | None = None
        choice = False
        if p.accept(":-"):
            pos, naf, neqs, order = body()
            p.expect(".")
            rules.append(ElpRule(None, tuple(pos), tuple(naf), tuple(neqs), False, order))
            continue
        if p.accept("{"):
            head = Literal(p.atom(), False)
            p.expect("}")
            choice = True
        else:
            head = literal()
        pos, naf, neqs, order = [], [], [], ()
        if p.accept(":-"):
            pos, naf, neqs, order = body()
        p.expect(".")
        rules.append(ElpRule(head, tuple(pos), tuple(naf), tuple(neqs), choice, order))
    return ElpProgram(tuple(rules))


# -- theories --------------------------------------------------------------------


def _signature(p: _Parser, kind: str) -> Symbol:
    t = p.expect_name("a symbol")
    p.expect("/")
    arity = p.expect_int()
    s = Symbol(t.text, arity, kind)
    p.declare(s, t)
    return s


def parse_formula(text: str, file: str = "<formula>") -> Formula:
    p = _Parser(text, file)
    f = p.formula()
    if not p.at_end():
        raise p.error(f"unexpected {p.tok.describe()}", ["end of input"])
    return f


def parse_theory(text: str, file: str = "<theory>") -> AspFoTheory:
    """Parse an ASP-FO theory made of gmodule, dmodule, tmodule and herbrand blocks."""
    p = _Parser(text, file)
    modules: list = []
    pending_herbrand: list[int] = []
    while not p.at_end():
        t = p.tok
        if p.at_word("gmodule"):
            p.advance()
            declared: Symbol | None = None
            if p.accept("["):
                p.expect_word("head")
                p.expect(":")
                declared = _signature(p, "predicate")
                p.expect("]")
            p.expect("{")
            rules: list[ChoiceRule] = []
            heads: list[tuple[Symbol, Token]] = []
            while not p.at("}"):
                rt = p.tok
                p.expect("{")
                head = p.atom()
                p.expect("}")
                body = p.formula() if p.accept("<-") else TOP
                p.expect(".")
                rules.append(ChoiceRule.make(head, body))
                heads.append((head.symbol, rt))
            p.expect("}")
            distinct = sorted({h for h, _ in heads} | ({declared} if declared else set()))
            if len(distinct) > 1:
                raise p.error(
                    "a gmodule must have a single head predicate, found " + ", ".join(map(str, distinct)), [], t
                )
            if not distinct:
                raise p.error("an empty gmodule needs a head; write 'gmodule [head: p/1] { }'", [], t)
            modules.append(_gmodule(p, distinct[0], rules, t))
        elif p.at_word("dmodule"):
            p.advance()
            defined: set[Symbol] | None = None
            if p.accept("["):
                p.expect_word("defined")
                p.expect(":")
                defined = set()
                if not p.at("]"):
                    defined.add(_signature(p, "predicate"))
                    while p.accept(","):
                        defined.add(_signature(p, "predicate"))
                p.expect("]")
            p.expect("{")
            drules: list[DefineRule] = []
            while not p.at("}"):
                head = p.atom()
                body = p.formula() if p.accept("<-") else TOP
                p.expect(".")
                drules.append(DefineRule.make(head, body))
            p.expect("}")
            if defined is None:
                defined = {r.head.symbol for r in drules}
            try:
                modules.append(DModule(frozenset(defined), tuple(drules)))
            except WellFormednessError as e:
                raise p.error(str(e), [], t) from None
        elif p.at_word("tmodule"):
            p.advance()
            p.expect("{")
            f = p.formula()
            p.accept(".")
            p.expect("}")
            try:
                modules.append(TModule(f))
            except WellFormednessError as e:
                raise p.error(str(e), [], t) from None
        elif p.at_word("herbrand"):
            p.advance()
            if p.accept("("):
                fs = set()
                if not p.at(")"):
                    fs.add(_signature(p, "function"))
                    while p.accept(","):
                        fs.add(_signature(p, "function"))
                p.expect(")")
                modules.append(HerbrandModule(frozenset(fs)))
            else:
                pending_herbrand.append(len(modules))
                modules.append(None)
            p.expect(".")
        else:
            raise p.error(f"unexpected {t.describe()}", ["'gmodule'", "'dmodule'", "'tmodule'", "'herbrand'"])
    if pending_herbrand:
        funcs = frozenset(s for s, _ in p.kinds.values() if s.kind == "function")
        for i in pending_herbrand:
            modules[i] = HerbrandModule(funcs)
    return AspFoTheory(tuple(modules))


def _gmodule(p: _Parser, head: Symbol, rules: list[ChoiceRule], t: Token) -> GModule:
    try:
        return GModule(head, tuple(rules))
    except WellFormednessError as e:
        raise p.error(str(e), [], t) from None



# -- structures ------------------------------------------------------------------


def _element(p: _Parser, domain: set[str] | None) -> str:
    t = p.expect_name("a domain element")
    if domain is not None and t.text not in domain:
        raise p.error(f"element {t.text} is not in the domain", [], t)
    return t.text


def _tuple(p: _Parser, domain: set[str]) -> tuple[str, ...]:
    if p.accept("("):
        items: list[str] = []
        if not p.at(")"):
            items.append(_element(p, domain))
            while p.accept(","):
                items.append(_element(p, domain))
        p.expect(")")
        return tuple(items)
    return (_element(p, domain),)


def parse_structure(text: str, voc: Vocabulary | None = None, file: str = "<structure>") -> Structure:
    """Parse a finite structure.

    With a vocabulary, every listed symbol must belong to it, predicates left
    out are empty and functions left out are an error. Without one, the
    vocabulary is inferred from the entries.
    """
    p = _Parser(text, file)
    if not p.at_word("domain"):
        raise p.error(f"unexpected {p.tok.describe()}", ["'domain'"])
    p.advance()
    p.expect(":")
    domain: list[str] = []
    start = p.tok
    while p.tok.kind == "NAME" and not (p.peek().kind == "PUNCT" and p.peek().text in ("=", "/")):
        t = p.advance()
        if t.text in domain:
            raise p.error(f"duplicate domain element {t.text}", [], t)
        domain.append(t.text)
    if not domain:
        raise p.error("domain must be non-empty", [], start)
    dom = set(domain)
    preds: dict[Symbol, set[tuple[str, ...]]] = {}
    funcs: dict[Symbol, dict[tuple[str, ...], str]] = {}
    seen: set[str] = set()
    while not p.at_end():
        nt = p.expect_name("a symbol")
        declared_arity = None
        if p.accept("/"):
            declared_arity = p.expect_int()
        p.expect("=")
        if nt.text in seen:
            raise p.error(f"symbol {nt.text} interpreted twice", [], nt)
        seen.add(nt.text)
        known = voc.lookup(nt.text) if voc is not None else None
        if voc is not None and known is None:
            raise p.error(f"unknown symbol {nt.text}", [], nt)
        if p.at_word("true") or p.at_word("false"):
            value = p.advance().text == "true"
            s = known or pred(nt.text, 0)
            if s.kind != "predicate" or s.arity != 0:
                raise p.error(f"{nt.text} is not a propositional symbol", [], nt)
            preds[s] = {()} if value else set()
            continue
        if p.tok.kind == "NAME":
            # constant: c = element
            s = known or func(nt.text, 0)
            if s.kind != "function" or s.arity != 0:
                raise p.error(f"{nt.text} is not a constant", [], nt)
            funcs[s] = {(): _element(p, dom)}
            continue
        p.expect("{")
        rows: list[tuple[tuple[str, ...], str | None]] = []
        is_func = known.kind == "function" if known is not None else None
        while not p.at("}"):
            args = _tuple(p, dom)
            value = None
            if p.accept("->"):
                value = _element(p, dom)
                if is_func is False:
                    raise p.error(f"{nt.text} is a predicate; '->' is for functions", [], nt)
                is_func = True
            else:
                if is_func:
                    raise p.error(f"missing '-> value' in function table of {nt.text}", ["'->'"])
                is_func = False
            rows.append((args, value))
            if not p.accept(";"):
                break
        p.expect("}")
        arities = {len(a) for a, _ in rows}
        if declared_arity is not None:
            arities.add(declared_arity)
        if known is not None:
            arities.add(known.arity)
        if len(arities) > 1:
            raise p.error(f"inconsistent arity for {nt.text}", [], nt)
        if not arities:
            raise p.error(f"cannot infer the arity of {nt.text}; write {nt.text}/k", [], nt)
        arity = arities.pop()
        if is_func:
            s = known or func(nt.text, arity)
            table: dict[tuple[str, ...], str] = {}
            for a, v in rows:
                if a in table and table[a] != v:
                    raise p.error(f"function {nt.text} maps {a} to two values", [], nt)
                table[a] = v  # type: ignore[assignment]
            funcs[s] = table
        else:
            s = known or pred(nt.text, arity)
            preds[s] = {a for a, _ in rows}
    symbols: set[Symbol] = set(preds) | set(funcs)
    if voc is not None:
        for s in voc:
            if s.is_predicate and s not in preds:
                preds[s] = set()
            symbols.add(s)
    try:
        Vocabulary(frozenset(symbols))
        return Structure(tuple(domain), preds, funcs)
    except (StructureError, VocabularyError) as e:
        raise ParseError(SourceSpan(file, 1, 1, 1), str(e)) from None


# -- interpretations -----------------------------------------------------------------

_PLACEHOLDER = re.compile(r"#(\d+)")


def parse_interpretation(text: str, file: str = "<interpretation>") -> IntendedInterpretation:
    p = _Parser(text, file)
    preds: dict[Symbol, str] = {}
    funcs: dict[Symbol, str] = {}
    names: set[str] = set()
    while not p.at_end():
        kt = p.expect_name("'pred' or 'func'")
        if kt.text not in ("pred", "func"):
            raise p.error(f"unexpected {kt.describe()}", ["'pred'", "'func'"], kt)
        nt = p.expect_name("a symbol")
        p.expect("/")
        arity = p.expect_int()
        p.expect("=")
        st = p.tok
        if st.kind != "STRING":
            raise p.error(f"unexpected {st.describe()}", ["a quoted template"])
        p.advance()
        if nt.text in names:
            raise p.error(f"duplicate symbol {nt.text}", [], nt)
        names.add(nt.text)
        for m in _PLACEHOLDER.finditer(st.text):
            k = int(m.group(1))
            if k < 1 or k > arity:
                raise p.error(f"placeholder exceeds arity: #{k} in template for {nt.text}/{arity}", [], st)
        if kt.text == "pred":
            preds[pred(nt.text, arity)] = st.text
        else:
            funcs[func(nt.text, arity)] = st.text
    return IntendedInterpretation(preds, funcs)


# -- printers ----------------------------------------------------------------------


def _name(name: str, arity: int) -> str:
    if arity == 0 and is_variable_name(name):
        return name + "()"
    return name


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return _name(t.symbol.name, 0)
    return t.symbol.name + "(" + ",".join(print_term(a) for a in t.args) + ")"


def print_atom(a: Atom) -> str:
    if not a.args:
        return _name(a.symbol.name, 0)
    return a.symbol.name + "(" + ",".join(print_term(x) for x in a.args) + ")"


_LEVEL = {Iff: 1, Implies: 2, Or: 3, And: 4}


def _fmt(f: Formula) -> tuple[str, int]:
    if isinstance(f, Atom):
        return print_atom(f), 5
    if isinstance(f, Equal):
        return f"{print_term(f.left)} = {print_term(f.right)}", 5
    if isinstance(f, TrueF):
        return "true", 5
    if isinstance(f, FalseF):
        return "false", 5
    if isinstance(f, Not):
        if isinstance(f.sub, Equal):
            return f"~({_fmt(f.sub)[0]})", 5
        return "~" + _wrap(f.sub, 5), 5
    if isinstance(f, Forall):
        return f"!{f.var}: " + _wrap(f.body, 5), 5
    if isinstance(f, Exists):
        return f"?{f.var}: " + _wrap(f.body, 5), 5
    if isinstance(f, Iff):
        return f"{_wrap(f.left, 2)} <=> {_wrap(f.right, 2)}", 1
    if isinstance(f, Implies):
        return f"{_wrap(f.left, 3)} => {_wrap(f.right, 2)}", 2
    if isinstance(f, Or):
        return f"{_wrap(f.left, 3)} | {_wrap(f.right, 4)}", 3
    if isinstance(f, And):
        return f"{_wrap(f.left, 4)} & {_wrap(f.right, 5)}", 4
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula, level: int) -> str:
    text, own = _fmt(f)
    return text if own >= level else f"({text})"


def print_formula(f: Formula) -> str:
    return _fmt(f)[0]


def _print_item(b) -> str:
    if isinstance(b, Pos):
        return print_atom(b.atom)
    if isinstance(b, Neg):
        return "not " + print_atom(b.atom)
    return f"{print_term(b.left)} != {print_term(b.right)}"


def print_asp_rule(r: AspRule) -> str:
    body = ", ".join(_print_item(b) for b in r.body)
    if r.kind == CONSTRAINT:
        return f":- {body}."
    head = print_atom(r.head)  # type: ignore[arg-type]
    if r.kind == CHOICE:
        head = "{" + head + "}"
    return f"{head} :- {body}." if body else f"{head}."


def print_program(p: AspProgram) -> str:
    return "".join(print_asp_rule(r) + "\n" for r in p.rules)


def _print_literal(lit: Literal) -> str:
    return ("-" if lit.negative else "") + print_atom(lit.atom)


def print_elp_rule(r: ElpRule) -> str:
    items = []
    for kind, b in r.body_items():
        if kind == "pos":
            items.append(_print_literal(b))
        elif kind == "naf":
            items.append("not " + _print_literal(b))
        else:
            items.append(f"{print_term(b.left)} != {print_term(b.right)}")
    body = ", ".join(items)
    if r.head is None:
        return f":- {body}."
    head = _print_literal(r.head)
    if r.choice:
        head = "{" + head + "}"
    return f"{head} :- {body}." if body else f"{head}."


def print_elp_program(p: ElpProgram) -> str:
    return "".join(print_elp_rule(r) + "\n" for r in p.rules)


def _sigs(symbols: Iterable[Symbol]) -> str:
    return ", ".join(f"{s.name}/{s.arity}" for s in sorted(symbols))


def print_module(m) -> str:
    if isinstance(m, GModule):
        lines = [f"gmodule [head: {m.head.name}/{m.head.arity}] {{"]
        for r in m.rules:
            body = "" if r.body == TOP else " <- " + print_formula(r.body)
            lines.append(f"  {{{print_atom(r.head)}}}{body}.")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(m, DModule):
        lines = [f"dmodule [defined: {_sigs(m.defined)}] {{"]
        for r in m.rules:
            body = "" if r.body == TOP else " <- " + print_formula(r.body)
            lines.append(f"  {print_atom(r.head)}{body}.")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(m, TModule):
        return "tmodule { " + print_formula(m.sentence) + " }"
    if isinstance(m, HerbrandModule):
        return f"herbrand({_sigs(m.functions)})."
    raise TypeError(f"not a module: {m!r}")


def print_theory(t: AspFoTheory) -> str:
    return "".join(print_module(m) + "\n" for m in t.modules)


def print_structure(s: Structure) -> str:
    lines = ["domain: " + " ".join(s.domain)]

    def tup(a: tuple[str, ...]) -> str:
        return a[0] if len(a) == 1 else "(" + ",".join(a) + ")"

    for sym in sorted(s.preds, key=lambda x: x.name):
        rows = sorted(s.preds[sym], key=s.tuple_key)
        if sym.arity == 0:
            lines.append(f"{sym.name} = {'true' if rows else 'false'}")
        elif rows:
            lines.append(f"{sym.name} = {{ " + "; ".join(tup(a) for a in rows) + " }")
        else:
            lines.append(f"{sym.name}/{sym.arity} = {{ }}")
    for sym in sorted(s.funcs, key=lambda x: x.name):
        table = s.funcs[sym]
        if sym.arity == 0:
            lines.append(f"{sym.name} = {table[()]}")
        else:
            rows = sorted(table, key=s.tuple_key)
            lines.append(f"{sym.name} = {{ " + "; ".join(f"{tup(a)} -> {table[a]}" for a in rows) + " }")
    return "\n".join(lines) + "\n"


def print_interpretation(i: IntendedInterpretation) -> str:
    def q(text: str) -> str:
        return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"pred {s.name}/{s.arity} = {q(t)}" for s, t in sorted(i.predicates.items())]
    lines += [f"func {s.name}/{s.arity} = {q(t)}" for s, t in sorted(i.functions.items())]
    return "".join(line + "\n" for line in lines)


def read_source(path: str, reader: Callable[[], str] | None = None) -> str:
    """Read a file path as UTF-8; '-' reads standard input via reader."""
    if path == "-":
        if reader is None:
            import sys

            return sys.stdin.read()
        return reader()
    with open(path, encoding="utf-8") as fh:
        return fh.read()
