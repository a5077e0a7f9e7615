"""One-step reductions: certificate verification and bounded search.

A reduction certificate claims ``target = (prefix o base) o suffix``.
``verify`` decides it by composing and comparing canonical programs.
``search_reduction`` looks for prefix/suffix pairs for ground (typically
propositional) programs, rule by rule: a prefix rule keeps the target
rule's head and rewrites its body into base-rule heads; suffix rules map
the chosen base rules' body atoms back to the target rule's body.  Options
that survive the per-rule filters are combined and the assembled pair is
accepted only if full verification passes, which makes the procedure
complete within exhaustive bounds while staying deterministic.

First-order decomposition search is out of scope: for non-ground inputs
only the width necessary condition is consulted (verification itself works
on any programs).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product

from .compose import DEFAULT_ASSIGNMENT_CAP, compose
from .programs import (
    Program,
    Rule,
    make_rule,
    program_atoms,
    rule_key,
    width,
)
from .terms import Atom, atom_key

FOUND = "found"
NOT_FOUND = "not-found"
BUDGET_EXCEEDED = "budget-exceeded"

SIMILAR = "similar"
LEFT_BELOW = "P<R"
RIGHT_BELOW = "R<P"
INCOMPARABLE = "incomparable-within-bounds"


@dataclass(frozen=True)
class ReductionCertificate:
    """Witness for target = (prefix o base) o suffix."""

    target: Program
    base: Program
    prefix: Program
    suffix: Program


@dataclass
class VerifyResult:
    ok: bool
    composed: Program
    missing: tuple[Rule, ...]
    extra: tuple[Rule, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify(cert: ReductionCertificate, *,
           max_assignments: int = DEFAULT_ASSIGNMENT_CAP) -> VerifyResult:
    """Check the certificate by actually composing; the diagnostic lists
    target rules the composition missed and composed rules not in the
    target."""
    composed = compose(
        compose(cert.prefix, cert.base, max_assignments=max_assignments),
        cert.suffix,
        max_assignments=max_assignments,
    )
    target_set = frozenset(cert.target)
    composed_set = frozenset(composed)
    missing = tuple(sorted(target_set - composed_set, key=rule_key))
    extra = tuple(sorted(composed_set - target_set, key=rule_key))
    return VerifyResult(not missing and not extra, composed, missing, extra)


def width_blocks(p: Program, r: Program) -> bool:
    """True when the width necessary condition already rules out a
    reduction of ``p`` to ``r`` (bound variables cannot increase)."""
    return width(p) > width(r)


# ---------------------------------------------------------------------------
# Bounded search


@dataclass(frozen=True)
class SearchBounds:
    atom_universe: frozenset[Atom]
    max_body: int
    max_rules_prefix: int = 10_000
    max_rules_suffix: int = 10_000
    time_budget: float = 60.0

    @staticmethod
    def exhaustive_for(p: Program, r: Program,
                       time_budget: float = 60.0) -> "SearchBounds":
        universe = program_atoms(p) | program_atoms(r)
        return SearchBounds(frozenset(universe), max(len(universe), 1),
                            time_budget=time_budget)


@dataclass
class SearchResult:
    status: str
    certificate: ReductionCertificate | None = None
    exhaustive: bool = False
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _is_propositional(p: Program) -> bool:
    return all(not a.args for a in program_atoms(p))


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _submasks(mask: int):
    # all submasks of mask, including 0, ascending
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return sorted(out)


def _prop_compose(rules: list[tuple[int, int]],
                  by_head: dict[int, list[int]]) -> frozenset[tuple[int, int]]:
    # Exact ground composition in bitmask space.
    out: set[tuple[int, int]] = set()
    for h, mask in rules:
        if mask == 0:
            out.add((h, 0))
            continue
        lists = [by_head.get(c) for c in _bits(mask)]
        if any(l is None for l in lists):
            continue
        unions = {0}
        for l in lists:
            unions = {u | w for u in unions for w in l}
        for u in unions:
            out.add((h, u))
    return frozenset(out)


class _Clock:
    def __init__(self, budget: float) -> None:
        self.start = time.monotonic()
        self.deadline = self.start + budget

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def expired(self) -> bool:
        return time.monotonic() > self.deadline


def search_reduction(p: Program, r: Program,
                     bounds: SearchBounds | None = None) -> SearchResult:
    """Search prefixes and suffixes witnessing ``p`` one-step reduced to
    ``r`` for ground programs.

    Returns the first verified certificate in a deterministic enumeration
    order (small prefixes and suffixes first), a definitive or bounded
    not-found, or a distinct budget-exceeded outcome.  ``exhaustive`` is
    only claimed for propositional inputs whose candidate spaces were not
    clipped by the bounds.
    """
    if width_blocks(p, r):
        return SearchResult(NOT_FOUND, exhaustive=True)
    if not p.is_ground or not r.is_ground:
        raise ValueError("reduction search handles ground programs only")
    if bounds is None:
        bounds = SearchBounds.exhaustive_for(p, r)
    clock = _Clock(bounds.time_budget)

    atoms = sorted(program_atoms(p) | program_atoms(r) | bounds.atom_universe,
                   key=atom_key)
    index = {a: i for i, a in enumerate(atoms)}
    universe_mask = 0
    for a in bounds.atom_universe:
        universe_mask |= 1 << index[a]

    p_rules = [(index[rl.head], _mask(rl, index)) for rl in p.sorted_rules()]
    r_rules = [(index[rl.head], _mask(rl, index)) for rl in r.sorted_rules()]
    p_set = frozenset(p_rules)
    by_head_r: dict[int, list[int]] = {}
    for h, m in r_rules:
        by_head_r.setdefault(h, []).append(m)
    for masks in by_head_r.values():
        masks.sort()
    targets_by_head: dict[int, set[int]] = {}
    for h, m in p_rules:
        targets_by_head.setdefault(h, set()).add(m)

    clipped = False
    r_heads = sorted(by_head_r)
    if bounds.max_body < len(r_heads):
        clipped = True

    # Per-rule options: (prefix_rule, frozenset of suffix rules) pairs that
    # can reproduce the rule and leak nothing with this head.
    all_options: list[list[tuple[tuple[int, int], frozenset[tuple[int, int]]]]] = []
    for h, bmask in p_rules:
        if clock.expired():
            return SearchResult(BUDGET_EXCEEDED, elapsed=clock.elapsed)
        targets = targets_by_head[h]
        options: list[tuple[tuple[int, int], frozenset[tuple[int, int]]]] = []
        seen: set = set()
        if bmask == 0:
            options.append(((h, 0), frozenset()))
            seen.add((0, frozenset()))
        if bmask & ~universe_mask:
            clipped = True
        allowed_w = [w for w in _submasks(bmask & universe_mask)
                     if bin(w).count("1") <= bounds.max_body]
        for size in range(1, bounds.max_body + 1):
            for beta in combinations(r_heads, size):
                beta_mask = 0
                for b in beta:
                    beta_mask |= 1 << b
                mids = {0}
                for b in beta:
                    mids = {u | w for u in mids for w in by_head_r[b]}
                for mid in sorted(mids):
                    mid_atoms = list(_bits(mid))
                    if mid == 0:
                        if bmask == 0:
                            key = (beta_mask, frozenset())
                            if key not in seen:
                                seen.add(key)
                                options.append(((h, beta_mask), frozenset()))
                        continue
                    for ws in product(allowed_w, repeat=len(mid_atoms)):
                        u = 0
                        for w in ws:
                            u |= w
                        if u != bmask:
                            continue
                        suffix = frozenset(zip(mid_atoms, ws))
                        key = (beta_mask, suffix)
                        if key in seen:
                            continue
                        seen.add(key)
                        emitted = _emissions((h, beta_mask), by_head_r, suffix)
                        if (h, bmask) in emitted and all(
                            eh == h and em in targets for eh, em in emitted
                        ):
                            options.append(((h, beta_mask), suffix))
                if clock.expired():
                    return SearchResult(BUDGET_EXCEEDED, elapsed=clock.elapsed)
        if not options:
            exhaustive = (not clipped and _is_propositional(p)
                          and _is_propositional(r))
            return SearchResult(NOT_FOUND, exhaustive=exhaustive,
                                elapsed=clock.elapsed)
        all_options.append(options)

    # Combine one option per rule by depth-first assembly.  Leaking is
    # monotone in both the prefix and the suffix (more rules only add
    # emissions), so a partial assembly whose emissions already escape P
    # prunes its whole subtree; a completed assembly that never leaked
    # reproduces every rule by construction.
    for opts in all_options:
        opts.sort(key=lambda o: (len(o[1]), o[0], tuple(sorted(o[1]))))
    state = {"capped": False, "expired": False}

    def assemble(idx: int, q_rules: frozenset, s_rules: frozenset):
        if clock.expired():
            state["expired"] = True
            return None
        if idx == len(all_options):
            return q_rules, s_rules
        for q_rule, suffix in all_options[idx]:
            nq = q_rules | {q_rule}
            ns = s_rules | suffix
            if (len(nq) > bounds.max_rules_prefix
                    or len(ns) > bounds.max_rules_suffix):
                state["capped"] = True
                continue
            by_head_s: dict[int, list[int]] = {}
            for c, w in ns:
                by_head_s.setdefault(c, []).append(w)
            emitted = _prop_compose(_prop_compose(sorted(nq), by_head_r),
                                    by_head_s)
            if not emitted <= p_set:
                continue
            found = assemble(idx + 1, nq, ns)
            if found is not None or state["expired"]:
                return found
        return None

    solution = assemble(0, frozenset(), frozenset())
    if state["expired"]:
        return SearchResult(BUDGET_EXCEEDED, elapsed=clock.elapsed)
    if solution is not None:
        q_rules, s_rules = solution
        cert = ReductionCertificate(
            target=p,
            base=r,
            prefix=_program_from_masks(q_rules, atoms),
            suffix=_program_from_masks(s_rules, atoms),
        )
        if verify(cert):
            return SearchResult(FOUND, cert, exhaustive=False,
                                elapsed=clock.elapsed)
    exhaustive = (not clipped and not state["capped"] and _is_propositional(p)
                  and _is_propositional(r))
    return SearchResult(NOT_FOUND, exhaustive=exhaustive, elapsed=clock.elapsed)


def _mask(rule: Rule, index: dict[Atom, int]) -> int:
    m = 0
    for a in rule.body:
        m |= 1 << index[a]
    return m


def _emissions(q_rule: tuple[int, int], by_head_r: dict[int, list[int]],
               suffix: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    by_head_s: dict[int, list[int]] = {}
    for c, w in suffix:
        by_head_s.setdefault(c, []).append(w)
    mid = _prop_compose([q_rule], by_head_r)
    return _prop_compose(sorted(mid), by_head_s)


def _program_from_masks(rules, atoms: list[Atom]) -> Program:
    out = []
    for h, m in sorted(rules):
        out.append(make_rule(atoms[h], (atoms[c] for c in _bits(m))))
    return Program(out)


# ---------------------------------------------------------------------------
# Similarity


@dataclass
class SimilarityResult:
    outcome: str
    forward: SearchResult  # evidence for P one-step reduced to R
    backward: SearchResult  # evidence for R one-step reduced to P

    @property
    def is_similar(self) -> bool:
        return self.outcome == SIMILAR


def similar(p: Program, r: Program,
            bounds: SearchBounds | None = None) -> SimilarityResult:
    """Decide similarity by searching both directions; each direction's
    evidence is attached.  Strict outcomes require the failing direction to
    be definitive (exhaustive bounds or the width obstruction)."""
    fwd_bounds = bounds if bounds is not None else SearchBounds.exhaustive_for(p, r)
    bwd_bounds = bounds if bounds is not None else SearchBounds.exhaustive_for(r, p)
    fwd = search_reduction(p, r, fwd_bounds)
    bwd = search_reduction(r, p, bwd_bounds)
    if fwd.found and bwd.found:
        outcome = SIMILAR
    elif fwd.found and bwd.status == NOT_FOUND and bwd.exhaustive:
        outcome = LEFT_BELOW
    elif bwd.found and fwd.status == NOT_FOUND and fwd.exhaustive:
        outcome = RIGHT_BELOW
    else:
        outcome = INCOMPARABLE
    return SimilarityResult(outcome, fwd, bwd)


# ---------------------------------------------------------------------------
# Certificate serialization (four-section program document)

_SECTIONS = ("TARGET", "BASE", "PREFIX", "SUFFIX")


def certificate_to_text(cert: ReductionCertificate) -> str:
    from .syntax import program_to_text

    parts = []
    for name, prog in zip(_SECTIONS, (cert.target, cert.base, cert.prefix,
                                      cert.suffix)):
        parts.append(f"% {name}\n" + program_to_text(prog))
    return "\n".join(parts)


def certificate_from_text(text: str, path: str = "<string>") -> ReductionCertificate:
    from .syntax import ParseError, parse_program

    chunks: dict[str, list[str]] = {}
    current: str | None = None
    for line in text.splitlines():
        stripped = line.strip()
        name = stripped[1:].strip() if stripped.startswith("%") else None
        if name in _SECTIONS:
            current = name
            chunks[current] = []
        elif current is not None:
            chunks[current].append(line)
    missing = [s for s in _SECTIONS if s not in chunks]
    if missing:
        raise ParseError(1, 1, f"missing certificate sections: {missing}", path)
    progs = {s: parse_program("\n".join(chunks[s]), path) for s in _SECTIONS}
    return ReductionCertificate(progs["TARGET"], progs["BASE"],
                                progs["PREFIX"], progs["SUFFIX"])
