"""Relation algebra on finite structures."""

from ._core import (
    Error,
    Structure,
    Term,
    build_cm,
    build_cm_vee,
    build_fig2,
    check,
    compile_posex,
    define_relation,
    ef_equiv,
    eval_term,
    min_distinguishing_rank,
    normalize_fp,
    parse_term,
    presets,
    run_cli,
    synthesize,
    table1,
    term_to_fo3,
    verify_claim2,
)

__all__ = [
    "Error",
    "Structure",
    "Term",
    "build_cm",
    "build_cm_vee",
    "build_fig2",
    "check",
    "compile_posex",
    "define_relation",
    "ef_equiv",
    "eval_term",
    "min_distinguishing_rank",
    "normalize_fp",
    "parse_term",
    "presets",
    "run_cli",
    "synthesize",
    "table1",
    "term_to_fo3",
    "verify_claim2",
]
