"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (UNEQUAL, no proper splitting,
NOT TOTAL, NOT EQUIVALENT), 2 usage or input error, 3 enumeration cap exceeded.
Output is collected and written once, so a failing command never leaves
partial results on standard output.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from . import frontend as fe
from .errors import DEFAULT_CAP, AspFoError, CapExceeded, SplittingError
from .fo_eval import equiv3
from .ground_elp import answer_sets, ground, stable_sets
from .render import render_fo, render_fo_nonstandard, render_gl, render_tarskian
from .semantics import gcompl, models, models_naive, stable_model, well_founded
from .splitting import finest_proper_splitting, to_aspfo, verify_split
from .structures import Structure, herbrand_carrier, true_atoms
from .syntax import AspFoTheory, DModule, GModule

OK, NEGATIVE, USAGE, CAP = 0, 1, 2, 3


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.out: list[str] = []

    def record(self, key: str, value) -> None:
        """A KEY: value line; shown in both formats."""
        self.out.append(f"{key}: {value}")

    def text(self, line: str = "") -> None:
        """Human-oriented detail; omitted in the lines format."""
        if self.fmt == "text":
            self.out.append(line)


def _read(path: str, stdin_used: list[bool]) -> str:
    if path == "-":
        if stdin_used[0]:
            raise AspFoError("standard input may be used for only one input")
        stdin_used[0] = True
    return fe.read_source(path)


def _structure_lines(out: Output, label: str, structures: list[Structure]) -> None:
    for n, s in enumerate(structures, 1):
        out.record(f"{label} {n}", " ".join(true_atoms(s)) or "(no true atoms)")
        if out.fmt == "text":
            out.text(fe.print_structure(s).rstrip("\n"))
            out.text()


def _dmodule(theory: AspFoTheory) -> DModule:
    ds = [m for m in theory.modules if isinstance(m, DModule)]
    if len(ds) != 1 or len(theory.modules) != 1:
        raise AspFoError("the input must contain exactly one dmodule")
    return ds[0]


def _params(d: DModule, args, read) -> Structure:
    if args.params:
        return fe.parse_structure(read(args.params), file=args.params)
    consts = {s for s in d.symbols() if s.is_constant}
    if consts:
        return herbrand_carrier(consts)
    return Structure(("o",), {}, {})


# -- commands -----------------------------------------------------------------------


def cmd_parse(args, out: Output, read) -> int:
    text = read(args.input)
    kind = args.kind
    if kind == "program":
        p = fe.parse_program(text, args.input)
        out.record("RULES", len(p.rules))
        body = fe.print_program(p)
    elif kind == "elp":
        e = fe.parse_elp_program(text, args.input)
        out.record("RULES", len(e.rules))
        body = fe.print_elp_program(e)
    elif kind == "theory":
        t = fe.parse_theory(text, args.input)
        out.record("MODULES", len(t.modules))
        body = fe.print_theory(t)
    elif kind == "structure":
        s = fe.parse_structure(text, file=args.input)
        out.record("DOMAIN", len(s.domain))
        body = fe.print_structure(s)
    elif kind == "interp":
        i = fe.parse_interpretation(text, args.input)
        out.record("SYMBOLS", len(i.predicates) + len(i.functions))
        body = fe.print_interpretation(i)
    else:
        f = fe.parse_formula(text, args.input)
        body = fe.print_formula(f) + "\n"
    out.record("KIND", kind)
    for line in body.rstrip("\n").split("\n"):
        out.text(line)
    return OK


def cmd_models(args, out: Output, read) -> int:
    theory = fe.parse_theory(read(args.theory), args.theory)
    carrier = None
    if args.structure:
        carrier = fe.parse_structure(read(args.structure), file=args.structure)
    finder = models_naive if args.naive else models
    found = finder(theory, carrier, args.cap)
    out.record("MODELS", len(found))
    _structure_lines(out, "MODEL", found)
    return OK


def cmd_stable(args, out: Output, read) -> int:
    d = _dmodule(fe.parse_theory(read(args.dmodule), args.dmodule))
    params = _params(d, args, read)
    found = stable_model(d, params, args.cap, prune=not args.naive)
    out.record("STABLE_MODELS", len(found))
    _structure_lines(out, "MODEL", found)
    return OK


def _wf(args, read):
    d = _dmodule(fe.parse_theory(read(args.dmodule), args.dmodule))
    return well_founded(d, _params(d, args, read))


def cmd_wellfounded(args, out: Output, read) -> int:
    wf = _wf(args, read)
    lower, upper = wf.ps.lower, wf.ps.upper
    out.record("TOTAL", "yes" if wf.total else "no")
    out.record("TRUE", " ".join(true_atoms(lower)) or "(none)")
    unknown = [a for a in true_atoms(upper) if a not in set(true_atoms(lower))]
    out.record("UNKNOWN", " ".join(unknown) or "(none)")
    return OK


def cmd_totality(args, out: Output, read) -> int:
    wf = _wf(args, read)
    out.record("RESULT", "TOTAL" if wf.total else "NOT TOTAL")
    return OK if wf.total else NEGATIVE


def _no_split(out: Output, e: SplittingError) -> int:
    out.record("RESULT", "NO PROPER SPLITTING")
    out.record("REASON", str(e))
    return NEGATIVE


def cmd_split(args, out: Output, read) -> int:
    p = fe.parse_program(read(args.program), args.program)
    try:
        sp = finest_proper_splitting(p)
    except SplittingError as e:
        return _no_split(out, e)
    out.record("PARTS", len(sp.parts))
    for n, part in enumerate(sp.parts, 1):
        out.record(f"PART {n}", f"{part.kind} rules {','.join(str(k + 1) for k in part.indices)}")
        for r in part.rules:
            out.text("  " + fe.print_asp_rule(r))
    return OK


def cmd_translate(args, out: Output, read) -> int:
    p = fe.parse_program(read(args.program), args.program)
    try:
        theory = to_aspfo(p)
    except SplittingError as e:
        return _no_split(out, e)
    out.record("MODULES", len(theory.modules))
    for line in fe.print_theory(theory).rstrip("\n").split("\n"):
        out.text(line)
    return OK


def cmd_verify_split(args, out: Output, read) -> int:
    p = fe.parse_program(read(args.program), args.program)
    try:
        report = verify_split(p, args.cap, args.max_atoms)
    except SplittingError as e:
        return _no_split(out, e)
    for line in report.lines():
        key, _, value = line.partition(": ")
        out.record(key, value)
    return OK if report.equal else NEGATIVE


def cmd_answer_sets(args, out: Output, read) -> int:
    text = read(args.program)
    if args.elp:
        e = fe.parse_elp_program(text, args.program)
        sets = stable_sets(ground(e, simplify=True), args.cap)
        out.record("ANSWER_SETS", len(sets))
        for n, x in enumerate(sets, 1):
            out.record(f"ANSWER_SET {n}", " ".join(str(lit) for lit in x.sorted()) or "(empty)")
        return OK
    p = fe.parse_program(text, args.program)
    found = answer_sets(p, args.cap)
    out.record("ANSWER_SETS", len(found))
    for n, s in enumerate(found, 1):
        out.record(f"ANSWER_SET {n}", " ".join(true_atoms(s)) or "(empty)")
    return OK


def cmd_equiv3(args, out: Output, read) -> int:
    lhs = fe.parse_formula(args.lhs, "<lhs>")
    rhs = fe.parse_formula(args.rhs, "<rhs>")
    result = equiv3(lhs, rhs, args.max_domain, args.cap)
    out.record("MAX_DOMAIN", args.max_domain)
    out.record("CHECKED", result.checked)
    if result.equivalent:
        out.record("RESULT", "EQUIVALENT (bounded)")
        return OK
    out.record("RESULT", "NOT EQUIVALENT")
    out.record("COUNTEREXAMPLE", result.describe())
    return NEGATIVE


def cmd_render(args, out: Output, read) -> int:
    interp = fe.parse_interpretation(read(args.interp), args.interp)
    text = read(args.input)
    if args.regime == "gl":
        r = render_gl(fe.parse_elp_program(text, args.input), interp)
    else:
        theory = fe.parse_theory(text, args.input)
        fn = {"fo": render_fo, "fo-neg": render_fo_nonstandard, "tarskian": render_tarskian}[args.regime]
        r = fn(theory, interp)
    if out.fmt == "lines":
        out.record("REGIME", r.regime)
        for note in r.notes:
            out.record("NOTE", note)
        for line in r.text.split("\n"):
            out.record("TEXT", line)
    else:
        out.out.extend(r.text.split("\n"))
        for note in r.notes:
            out.out.append(f"({note})")
    return OK


def cmd_gcompl(args, out: Output, read) -> int:
    theory = fe.parse_theory(read(args.theory), args.theory)
    gs = [m for m in theory.modules if isinstance(m, GModule)]
    out.record("GMODULES", len(gs))
    for g in gs:
        out.record(f"GCOMPL {g.head.name}/{g.head.arity}", fe.print_formula(gcompl(g)))
    return OK


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (default 2^20)")
    common.add_argument("--format", choices=("text", "lines"), default="text")

    parser = argparse.ArgumentParser(prog="aspfo", description="ASP-FO semantics, splitting and readings")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("parse", cmd_parse, "parse and print an input in normal form")
    p.add_argument("--kind", choices=("program", "elp", "theory", "structure", "interp", "formula"), required=True)
    p.add_argument("--input", required=True)

    p = add("models", cmd_models, "enumerate the models of a theory")
    p.add_argument("--theory", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--herbrand", action="store_true", help="use the Herbrand carrier of the constants")
    g.add_argument("--structure", help="structure file fixing the domain and some symbols")
    p.add_argument("--naive", action="store_true", help="check every expansion instead of searching")

    for name, fn, help in (
        ("stable", cmd_stable, "stable models of a D-module"),
        ("wellfounded", cmd_wellfounded, "well-founded model of a D-module"),
        ("totality", cmd_totality, "is the well-founded model two-valued"),
    ):
        p = add(name, fn, help)
        p.add_argument("--dmodule", required=True)
        p.add_argument("--params", help="structure interpreting the parameters")
        if name == "stable":
            p.add_argument("--naive", action="store_true", help="do not prune with the well-founded bounds")

    for name, fn, help in (
        ("split", cmd_split, "finest proper splitting of a program"),
        ("translate", cmd_translate, "translate a properly split program to ASP-FO"),
    ):
        p = add(name, fn, help)
        p.add_argument("--program", required=True)

    p = add("verify-split", cmd_verify_split, "compare answer sets with models of the translation")
    p.add_argument("--program", required=True)
    p.add_argument("--max-atoms", type=int, default=None)

    p = add("answer-sets", cmd_answer_sets, "answer sets of a program")
    p.add_argument("--program", required=True)
    p.add_argument("--elp", action="store_true", help="extended program with strong negation")

    p = add("equiv3", cmd_equiv3, "bounded three-valued equivalence of two formulas")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--max-domain", type=int, default=2)

    p = add("render", cmd_render, "natural-language reading")
    p.add_argument("--regime", choices=("fo", "fo-neg", "gl", "tarskian"), required=True)
    p.add_argument("--interp", required=True)
    p.add_argument("--input", required=True)

    p = add("gcompl", cmd_gcompl, "completion sentences of the G-modules of a theory")
    p.add_argument("--theory", required=True)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    out = Output(args.format)
    stdin_used = [False]

    def read(path: str) -> str:
        return _read(path, stdin_used)

    try:
        code = args.fn(args, out, read)
    except CapExceeded as e:
        print(f"CAP EXCEEDED: {e}", file=stderr)
        return CAP
    except (AspFoError, OSError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return USAGE
    if out.out:
        stdout.write("\n".join(out.out) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
