"""Constructive reduction certificates for the algebra's stock relations.

Each function builds the prefix/suffix pair witnessing one relation
directly from the operators involved, so the claim can be checked by
``verify`` instead of by search.  All of them return a
``ReductionCertificate`` whose target/base are the two related programs.
"""

from __future__ import annotations

from typing import Iterable

from .compose import compose
from .decompose import ReductionCertificate
from .programs import (
    EMPTY,
    Program,
    Signature,
    body_minus,
    body_of,
    body_plus,
    dual,
    facts,
    gnd,
    head_of,
    interpretation,
    left_reduct,
    proper,
    right_reduct,
    signature_of,
    unit_program,
    unit_restricted,
)
from .terms import Atom


def grounding_reduces(p: Program, sig: Signature | None = None,
                      depth: int = 0) -> ReductionCertificate:
    """gnd(P) reduces to P: sandwich P between groundings of the unit."""
    if sig is None:
        sig = signature_of(p)
    ground_unit = gnd(unit_program(sig), sig, depth)
    return ReductionCertificate(
        target=gnd(p, sig, depth), base=p, prefix=ground_unit, suffix=ground_unit
    )


def tp_image_reduces(p: Program, i: Iterable[Atom],
                     sig: Signature | None = None,
                     depth: int = 0) -> ReductionCertificate:
    """The one-step consequences of I reduce to gnd(P): suffix by I."""
    if sig is None:
        sig = signature_of(p)
    grounded = gnd(p, sig, depth)
    from .semantics import tp

    return ReductionCertificate(
        target=interpretation(tp(grounded, i)),
        base=grounded,
        prefix=unit_program(signature_of(grounded)),
        suffix=interpretation(i),
    )


def interpretation_reduces(i: Iterable[Atom], p: Program) -> ReductionCertificate:
    """I reduces to any P: I absorbs composition on the right; the empty
    suffix keeps only facts, which is all of I."""
    return ReductionCertificate(
        target=interpretation(i), base=p, prefix=interpretation(i), suffix=EMPTY
    )


def union_with_interpretation_reduces(p: Program,
                                      i: Iterable[Atom]) -> ReductionCertificate:
    """P u I reduces to P with prefix 1 u I."""
    ip = interpretation(i)
    unit = unit_program(signature_of(p, ip))
    return ReductionCertificate(
        target=p | ip, base=p, prefix=unit | ip, suffix=unit
    )


def interpretations_similar(i: Iterable[Atom],
                            j: Iterable[Atom]) -> tuple[ReductionCertificate, ReductionCertificate]:
    """Any two interpretations are similar, in both directions."""
    return (
        interpretation_reduces(i, interpretation(j)),
        interpretation_reduces(j, interpretation(i)),
    )


# --- relations about ground programs ---------------------------------------


def heads_reduce(p: Program, hb: Iterable[Atom]) -> ReductionCertificate:
    """head(P) reduces to P: compose with the Herbrand base on the right."""
    return ReductionCertificate(
        target=interpretation(head_of(p)),
        base=p,
        prefix=unit_program(signature_of(p)),
        suffix=interpretation(hb),
    )


def bodies_reduce(p: Program, hb: Iterable[Atom]) -> ReductionCertificate:
    """body(P) reduces to the dual of the proper part."""
    base = dual(proper(p))
    return ReductionCertificate(
        target=interpretation(body_of(p)),
        base=base,
        prefix=unit_program(signature_of(base)),
        suffix=interpretation(hb),
    )


def facts_reduce(p: Program) -> ReductionCertificate:
    """facts(P) reduces to P: the empty suffix keeps exactly the facts."""
    return ReductionCertificate(
        target=facts(p), base=p, prefix=unit_program(signature_of(p)), suffix=EMPTY
    )


def program_reduces_to_unit_with_facts(p: Program) -> ReductionCertificate:
    """P reduces to 1 u facts(P): route every proper head through the
    base's unit slice, then reinstall the proper rules via the suffix."""
    unit = unit_program(signature_of(p))
    return ReductionCertificate(
        target=p,
        base=unit | facts(p),
        prefix=unit_restricted(head_of(proper(p))) | facts(p),
        suffix=proper(p),
    )


def body_extension_similarity(p: Program, i: Iterable[Atom], hb: Iterable[Atom]
                              ) -> tuple[ReductionCertificate, ReductionCertificate]:
    """P o I-plus vs P, both directions.

    Forward (extension reduces to P) always verifies.  The reverse ships
    the insert-then-delete construction (prefix 1, suffix I-minus), which
    verifies exactly when no proper-rule body of P meets I; composition
    deletes all occurrences of I, not just the inserted ones.
    """
    unit = unit_program(signature_of(p))
    extended = compose(p, body_plus(i, hb))
    forward = ReductionCertificate(target=extended, base=p, prefix=unit,
                                   suffix=body_plus(i, hb))
    reverse = ReductionCertificate(target=p, base=extended, prefix=unit,
                                   suffix=body_minus(i, hb))
    return forward, reverse


def body_deletion_reduces(p: Program, i: Iterable[Atom],
                          hb: Iterable[Atom]) -> ReductionCertificate:
    """P o I-minus reduces to P."""
    return ReductionCertificate(
        target=compose(p, body_minus(i, hb)),
        base=p,
        prefix=unit_program(signature_of(p)),
        suffix=body_minus(i, hb),
    )


def left_reduct_reduces(p: Program, i: Iterable[Atom]) -> ReductionCertificate:
    return ReductionCertificate(
        target=left_reduct(p, i),
        base=p,
        prefix=unit_restricted(i),
        suffix=unit_program(signature_of(p)),
    )


def right_reduct_reduces(p: Program, i: Iterable[Atom]) -> ReductionCertificate:
    return ReductionCertificate(
        target=right_reduct(p, i),
        base=p,
        prefix=unit_program(signature_of(p)),
        suffix=unit_restricted(i),
    )
