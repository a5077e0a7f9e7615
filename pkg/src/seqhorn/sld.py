"""SLD resolution with leftmost selection, plus translated derivations.

``sld`` is textbook SLD: depth-first search over rule choices in program
order, leftmost goal selected, every rule renamed apart before use.  With
``shortest=True`` the search runs iterative deepening and returns a
minimal-length refutation instead of the first one in search order.

``translated_sld`` answers a query of one program through another: each
macro step resolves the selected goal with a prefix rule (phase Q), each
atom that introduces with a base rule (phase R), and each atom those
introduce with a suffix rule (phase S), backtracking across all three
choice points.  One macro step realizes one application of a composed
(prefix o base) o suffix rule; to keep that exact, every stage's freshly
introduced block of goals is deduplicated (rule bodies are sets).  When the
decomposition identity holds for the query's native program, a refutation
here certifies the native consequence.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .programs import Program, Rule, rename_fresh
from .terms import Atom, FreshVars, Subst, atom_vars, subst_atom, unify

REFUTATION = "refutation"
FAILED = "failed"
DEPTH_EXCEEDED = "depth-exceeded"

DEFAULT_DEPTH_LIMIT = 1000


@dataclass(frozen=True)
class Query:
    goals: tuple[Atom, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.goals


@dataclass
class DerivationStep:
    query_before: Query
    index: int  # position of the selected atom
    phase: str  # one of "P", "Q", "R", "S"
    rule: Rule  # the program rule, as stored (for display)
    variant: Rule  # the renamed-apart copy actually resolved with
    unifier: Subst
    query_after: Query


@dataclass
class Derivation:
    query: Query
    steps: list[DerivationStep] = field(default_factory=list)
    outcome: str = FAILED

    @property
    def is_refutation(self) -> bool:
        return self.outcome == REFUTATION


def query_vars(q: Query) -> set[str]:
    acc: set[str] = set()
    for a in q.goals:
        atom_vars(a, acc)
    return acc


def _resolve_at(goals: tuple[Atom, ...], index: int, variant: Rule):
    theta = unify(goals[index], variant.head)
    if theta is None:
        return None
    new_goals = tuple(
        subst_atom(a, theta)
        for a in goals[:index] + variant.body + goals[index + 1:]
    )
    return new_goals, theta


def resolve(q: Query, r: Rule):
    """Resolvent of a nonempty query and a rule already renamed apart.

    Unifies the leftmost goal with the rule head, replaces it by the rule
    body (in its canonical order) and applies the mgu to the whole
    resolvent.  Returns (Query, unifier) or None.
    """
    if q.is_empty:
        raise ValueError("cannot resolve the empty query")
    res = _resolve_at(q.goals, 0, r)
    if res is None:
        return None
    new_goals, theta = res
    return Query(new_goals), theta


def _ensure_stack_room() -> None:
    if sys.getrecursionlimit() < 50_000:
        sys.setrecursionlimit(50_000)


def sld(p: Program, q: Query, depth_limit: int = DEFAULT_DEPTH_LIMIT,
        shortest: bool = False) -> Derivation:
    """First refutation by depth-first search, or an explicit non-success.

    Outcomes: ``refutation`` (steps hold the successful derivation),
    ``failed`` (search space exhausted below the bound), or
    ``depth-exceeded`` (some branch hit the bound, so nothing is claimed).
    """
    _ensure_stack_room()
    pool = FreshVars(avoid=query_vars(q))

    def dfs(goals: tuple[Atom, ...], depth_left: int):
        if not goals:
            return [], False
        if depth_left == 0:
            return None, True
        exceeded = False
        for rule in p:
            variant = rename_fresh(rule, pool)
            res = _resolve_at(goals, 0, variant)
            if res is None:
                continue
            new_goals, theta = res
            sub, ex = dfs(new_goals, depth_left - 1)
            exceeded = exceeded or ex
            if sub is not None:
                step = DerivationStep(Query(goals), 0, "P", rule, variant,
                                      theta, Query(new_goals))
                return [step] + sub, exceeded
        return None, exceeded

    return _run_search(q, dfs, depth_limit, shortest)


def _run_search(q: Query, dfs, depth_limit: int, shortest: bool) -> Derivation:
    if shortest:
        for bound in range(depth_limit + 1):
            steps, exceeded = dfs(q.goals, bound)
            if steps is not None:
                return Derivation(q, steps, REFUTATION)
            if not exceeded:
                return Derivation(q, [], FAILED)
        return Derivation(q, [], DEPTH_EXCEEDED)
    steps, exceeded = dfs(q.goals, depth_limit)
    if steps is not None:
        return Derivation(q, steps, REFUTATION)
    return Derivation(q, [], DEPTH_EXCEEDED if exceeded else FAILED)


# ---------------------------------------------------------------------------
# Translated derivations


def _dedup_block(goals: tuple[Atom, ...], end: int) -> tuple[tuple[Atom, ...], int]:
    block = goals[:end]
    seen: set[Atom] = set()
    uniq: list[Atom] = []
    for a in block:
        if a not in seen:
            seen.add(a)
            uniq.append(a)
    return tuple(uniq) + goals[end:], len(uniq)


def translated_sld(prefix: Program, base: Program, suffix: Program, q: Query,
                   depth_limit: int = DEFAULT_DEPTH_LIMIT,
                   shortest: bool = False) -> Derivation:
    """Answer a query by routing every derivation step through another
    program: prefix step (Q), one base step per introduced atom (R), one
    suffix step per atom the base steps introduced (S, skipped when nothing
    was introduced).  Backtracks across all three choice points; the depth
    limit counts macro steps.
    """
    _ensure_stack_room()
    pool = FreshVars(avoid=query_vars(q))

    def stage(goals, pos, npending, prog, phase):
        # Resolve `npending` consecutive goals starting at `pos`, left to
        # right; yields (steps, goals', end-of-introduced-region).
        if npending == 0:
            yield [], goals, pos
            return
        for rule in prog:
            variant = rename_fresh(rule, pool)
            res = _resolve_at(goals, pos, variant)
            if res is None:
                continue
            g1, theta = res
            step = DerivationStep(Query(goals), pos, phase, rule, variant,
                                  theta, Query(g1))
            m = len(variant.body)
            for substeps, g2, end in stage(g1, pos + m, npending - 1, prog, phase):
                yield [step] + substeps, g2, end

    def macro_candidates(goals):
        for q_rule in prefix:
            variant = rename_fresh(q_rule, pool)
            res = _resolve_at(goals, 0, variant)
            if res is None:
                continue
            g1, theta = res
            qstep = DerivationStep(Query(goals), 0, "Q", q_rule, variant,
                                   theta, Query(g1))
            g1, mq = _dedup_block(g1, len(variant.body))
            if mq == 0:
                yield [qstep], g1
                continue
            for rsteps, g2, rend in stage(g1, 0, mq, base, "R"):
                g2, rend = _dedup_block(g2, rend)
                if rend == 0:
                    yield [qstep] + rsteps, g2
                    continue
                for ssteps, g3, send in stage(g2, 0, rend, suffix, "S"):
                    g3, _ = _dedup_block(g3, send)
                    yield [qstep] + rsteps + ssteps, g3

    def mdfs(goals: tuple[Atom, ...], depth_left: int):
        if not goals:
            return [], False
        if depth_left == 0:
            return None, True
        exceeded = False
        for steps, new_goals in macro_candidates(goals):
            sub, ex = mdfs(new_goals, depth_left - 1)
            exceeded = exceeded or ex
            if sub is not None:
                return steps + sub, exceeded
        return None, exceeded

    return _run_search(q, mdfs, depth_limit, shortest)


def macro_step_count(d: Derivation) -> int:
    """Number of macro steps in a translated refutation (Q-steps start one
    each); for plain derivations this is just the step count."""
    if not d.steps:
        return 0
    if all(s.phase == "P" for s in d.steps):
        return len(d.steps)
    return sum(1 for s in d.steps if s.phase == "Q")


# ---------------------------------------------------------------------------
# Trace rendering


def render_derivation(d: Derivation, labels: dict[str, str] | None = None) -> str:
    """One line per step: ``<phase> <rule> ⊢ <resolvent>``, preceded by the
    initial query line and with ``□`` for the empty query."""
    from .syntax import goals_to_text, rule_to_text

    shown = dict(labels or {})
    lines = ["? " + goals_to_text(d.query.goals)]
    for step in d.steps:
        label = shown.get(step.phase, step.phase)
        after = goals_to_text(step.query_after.goals) if step.query_after.goals else "□"
        lines.append(f"{label} {rule_to_text(step.rule)} ⊢ {after}")
    return "\n".join(lines) + "\n"
