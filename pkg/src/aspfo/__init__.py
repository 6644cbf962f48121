"""ASP-FO: answer set programs read as first-order theories with definitions.

The package parses core ASP programs and ASP-FO theories, computes their
semantics by fixpoint iteration and bounded enumeration, translates properly
split programs into ASP-FO, and renders formal objects as English text.
"""

from .errors import (
    AspFoError,
    CapExceeded,
    EvaluationError,
    InfiniteUniverse,
    ParseError,
    RenderError,
    SourceSpan,
    SplittingError,
    StructureError,
    VocabularyError,
    WellFormednessError,
)
from .fo_eval import equiv3, eval3, eval_term, pair_sat, sat
from .frontend import (
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
)
from .ground_elp import BelievedLiteralSet, ElpProgram, answer_sets, ground, reduct, stable_sets
from .render import (
    IntendedInterpretation,
    Rendering,
    render_claim,
    render_fo,
    render_fo_nonstandard,
    render_gl,
    render_tarskian,
)
from .semantics import (
    gcompl,
    herbrand_emulation,
    least_fixpoint,
    models,
    sat_gmodule,
    sat_module,
    sat_theory,
    sat_tmodule,
    stable_model,
    well_founded,
)
from .splitting import dep_graph, finest_proper_splitting, to_aspfo, verify_split
from .structures import TV, PartialStructure, Structure, compose, expansions, herbrand_structures, herbrand_universe, le_t, project
from .syntax import AspFoTheory, AspProgram, DModule, GModule, HerbrandModule, TModule, Vocabulary, free_vars, hd, pars

__version__ = "0.1.0"

__all__ = [
    "answer_sets",
    "AspFoError",
    "AspFoTheory",
    "AspProgram",
    "BelievedLiteralSet",
    "CapExceeded",
    "compose",
    "dep_graph",
    "DModule",
    "ElpProgram",
    "equiv3",
    "eval3",
    "eval_term",
    "EvaluationError",
    "expansions",
    "finest_proper_splitting",
    "free_vars",
    "gcompl",
    "GModule",
    "ground",
    "hd",
    "herbrand_emulation",
    "herbrand_structures",
    "herbrand_universe",
    "HerbrandModule",
    "InfiniteUniverse",
    "IntendedInterpretation",
    "le_t",
    "least_fixpoint",
    "models",
    "pair_sat",
    "pars",
    "parse_elp_program",
    "parse_formula",
    "parse_interpretation",
    "parse_program",
    "parse_structure",
    "parse_theory",
    "ParseError",
    "PartialStructure",
    "print_elp_program",
    "print_formula",
    "print_interpretation",
    "print_program",
    "print_structure",
    "print_theory",
    "project",
    "reduct",
    "render_claim",
    "render_fo",
    "render_fo_nonstandard",
    "render_gl",
    "render_tarskian",
    "RenderError",
    "Rendering",
    "sat",
    "sat_gmodule",
    "sat_module",
    "sat_theory",
    "sat_tmodule",
    "SourceSpan",
    "SplittingError",
    "stable_model",
    "stable_sets",
    "Structure",
    "StructureError",
    "TModule",
    "to_aspfo",
    "TV",
    "verify_split",
    "Vocabulary",
    "VocabularyError",
    "well_founded",
    "WellFormednessError",
]
