"""Sequential composition algebra for Horn logic programs."""

from .compose import CompositionBudgetError, compose, compose_ground
from .decompose import (
    ReductionCertificate,
    SearchBounds,
    SearchResult,
    SimilarityResult,
    VerifyResult,
    certificate_from_text,
    certificate_to_text,
    search_reduction,
    similar,
    verify,
    width_blocks,
)
from .programs import (
    Program,
    Rule,
    Signature,
    apply,
    body_minus,
    body_of,
    body_plus,
    canonicalize,
    dual,
    facts,
    gnd,
    head_of,
    herbrand_base,
    interpretation,
    left_reduct,
    make_rule,
    proper,
    rename_fresh,
    right_reduct,
    rule_width,
    signature_of,
    unit_program,
    unit_restricted,
    width,
)
from .semantics import entails, least_model, logically_equivalent, tp
from .sld import (
    Derivation,
    DerivationStep,
    Query,
    render_derivation,
    resolve,
    sld,
    translated_sld,
)
from .syntax import (
    ParseError,
    parse_program,
    parse_query,
    program_to_text,
    query_to_text,
    rule_to_text,
)
from .terms import Atom, Compound, Const, FreshVars, Term, Var, unify, unify_pairs

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "Compound",
    "CompositionBudgetError",
    "Const",
    "Derivation",
    "DerivationStep",
    "FreshVars",
    "ParseError",
    "Program",
    "Query",
    "ReductionCertificate",
    "Rule",
    "SearchBounds",
    "SearchResult",
    "Signature",
    "SimilarityResult",
    "Term",
    "Var",
    "VerifyResult",
    "apply",
    "body_minus",
    "body_of",
    "body_plus",
    "canonicalize",
    "certificate_from_text",
    "certificate_to_text",
    "compose",
    "compose_ground",
    "dual",
    "entails",
    "facts",
    "gnd",
    "head_of",
    "herbrand_base",
    "interpretation",
    "least_model",
    "left_reduct",
    "logically_equivalent",
    "make_rule",
    "parse_program",
    "parse_query",
    "program_to_text",
    "proper",
    "query_to_text",
    "rename_fresh",
    "render_derivation",
    "resolve",
    "right_reduct",
    "rule_to_text",
    "rule_width",
    "search_reduction",
    "signature_of",
    "similar",
    "sld",
    "tp",
    "translated_sld",
    "unify",
    "unify_pairs",
    "unit_program",
    "unit_restricted",
    "verify",
    "width",
    "width_blocks",
]
