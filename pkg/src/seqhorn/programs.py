"""Rules and Horn programs as first-class values, plus structural operators.

A rule is a head atom with a set of body atoms (stored as a deduplicated,
canonically ordered tuple); a program is a set of rules compared up to
alpha-equivalence.  Program construction canonicalizes every rule, so two
programs are equal exactly when their canonical rule sets coincide, while
iteration preserves first-insertion ("textual") order for deterministic
derivations.

Everything here is immutable and safe to share across threads; the only
stateful facility is the fresh-name pool, which is always per-computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import factorial
from typing import Iterable, Iterator

from .terms import (
    Atom,
    Compound,
    Const,
    FreshVars,
    Subst,
    Term,
    Var,
    atom_is_ground,
    atom_key,
    atom_var_order,
    atom_vars,
    subst_atom,
    subst_term,
    term_key,
)


@dataclass(frozen=True)
class Rule:
    head: Atom
    body: tuple[Atom, ...] = ()

    @property
    def is_fact(self) -> bool:
        return not self.body

    @property
    def size(self) -> int:
        return len(self.body)

    def __str__(self) -> str:
        from .syntax import rule_to_text

        return rule_to_text(self)


def make_rule(head: Atom, body: Iterable[Atom] = ()) -> Rule:
    """Rule with its body deduplicated and sorted under the fixed atom order."""
    uniq = sorted(set(body), key=atom_key)
    return Rule(head, tuple(uniq))


def rule_vars(r: Rule) -> set[str]:
    acc = atom_vars(r.head)
    for a in r.body:
        atom_vars(a, acc)
    return acc


def rule_is_ground(r: Rule) -> bool:
    return atom_is_ground(r.head) and all(atom_is_ground(a) for a in r.body)


def subst_rule(r: Rule, s: Subst) -> Rule:
    return make_rule(subst_atom(r.head, s), (subst_atom(a, s) for a in r.body))


def apply(s: Subst, x):
    """Homomorphic substitution application on a Term, Atom or Rule."""
    if isinstance(x, Rule):
        return subst_rule(x, s)
    if isinstance(x, Atom):
        return subst_atom(x, s)
    return subst_term(x, s)


def rename_fresh(r: Rule, pool: FreshVars) -> Rule:
    """Variant of ``r`` with variables drawn from ``pool`` (alpha-equivalent,
    disjoint from every name the pool has issued or will issue again)."""
    names = sorted(rule_vars(r))
    if not names:
        return r
    ren: Subst = {n: Var(next(pool)) for n in names}
    return Rule(subst_atom(r.head, ren), tuple(subst_atom(a, ren) for a in r.body))


def rule_key(r: Rule):
    return (atom_key(r.head), len(r.body), tuple(atom_key(a) for a in r.body))


# ---------------------------------------------------------------------------
# Canonical forms

_CANON_PERM_CAP = 5040  # falls back to a sort/rename fixpoint beyond 7!


def _rename_first_occurrence(head: Atom, body: tuple[Atom, ...]) -> Rule:
    seen: list[str] = []
    atom_var_order(head, seen)
    for a in body:
        atom_var_order(a, seen)
    ren: Subst = {n: Var(f"v{i}") for i, n in enumerate(seen, start=1)}
    return Rule(subst_atom(head, ren), tuple(subst_atom(a, ren) for a in body))


def canonicalize(r: Rule) -> Rule:
    """Canonical representative of the rule's alpha-equivalence class.

    Body atoms are sorted under the fixed total order with all variables
    compared equal at first pass, variables are renamed v1, v2, ... in order
    of first occurrence in (head, sorted body), and ties between atoms that
    are equal up to variable names are broken by the least fully-named form.
    Idempotent and invariant under alpha-renaming of the input.
    """
    body = sorted(set(r.body), key=atom_key)
    groups: list[list[Atom]] = []
    keys: list = []
    for a in sorted(body, key=lambda a: atom_key(a, named_vars=False)):
        k = atom_key(a, named_vars=False)
        if keys and keys[-1] == k:
            groups[-1].append(a)
        else:
            groups.append([a])
            keys.append(k)

    n_candidates = 1
    for g in groups:
        n_candidates *= factorial(len(g))
    if n_candidates > _CANON_PERM_CAP:
        return _canonicalize_iterative(r.head, [a for g in groups for a in g])

    best: Rule | None = None
    best_key = None
    for arrangement in product(*(permutations(g) for g in groups)):
        flat = tuple(a for g in arrangement for a in g)
        cand = _rename_first_occurrence(r.head, flat)
        k = rule_key(cand)
        if best_key is None or k < best_key:
            best, best_key = cand, k
    assert best is not None
    return best


def _canonicalize_iterative(head: Atom, body: list[Atom]) -> Rule:
    # Degenerate escape hatch for huge same-shape atom groups: iterate
    # sort-then-rename to a fixpoint (deterministic, best effort).
    cand = _rename_first_occurrence(head, tuple(body))
    for _ in range(8):
        nxt = _rename_first_occurrence(cand.head, tuple(sorted(cand.body, key=atom_key)))
        if nxt == cand:
            break
        cand = nxt
    return cand


def alpha_equal(a: Rule, b: Rule) -> bool:
    return canonicalize(a) == canonicalize(b)


# ---------------------------------------------------------------------------
# Programs


class Program:
    """A finite set of canonicalized rules.

    Equality and hashing use the canonical rule set (duplicates up to
    alpha-equivalence collapse); iteration follows first-insertion order so
    rule choice in derivations is deterministic.
    """

    __slots__ = ("_rules", "_ruleset")

    def __init__(self, rules: Iterable[Rule] = ()) -> None:
        ordered: list[Rule] = []
        seen: set[Rule] = set()
        for r in rules:
            c = canonicalize(r)
            if c not in seen:
                seen.add(c)
                ordered.append(c)
        self._rules: tuple[Rule, ...] = tuple(ordered)
        self._ruleset: frozenset[Rule] = frozenset(ordered)

    @property
    def rules(self) -> tuple[Rule, ...]:
        return self._rules

    def __iter__(self) -> Iterator[Rule]:
        return iter(self._rules)

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, r: Rule) -> bool:
        return canonicalize(r) in self._ruleset

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return self._ruleset == other._ruleset

    def __hash__(self) -> int:
        return hash(self._ruleset)

    def __or__(self, other: "Program") -> "Program":
        return Program(self._rules + other._rules)

    def __repr__(self) -> str:
        from .syntax import program_to_text

        return f"Program({program_to_text(self)!r})"

    @property
    def is_ground(self) -> bool:
        return all(rule_is_ground(r) for r in self._rules)

    def sorted_rules(self) -> list[Rule]:
        return sorted(self._rules, key=rule_key)


EMPTY = Program()


def program(*rules: Rule) -> Program:
    return Program(rules)


def interpretation(atoms: Iterable[Atom]) -> Program:
    """The set of ground atoms viewed as a program of facts."""
    atoms = list(atoms)
    for a in atoms:
        if not atom_is_ground(a):
            raise ValueError(f"interpretation atoms must be ground: {a}")
    return Program(make_rule(a) for a in sorted(set(atoms), key=atom_key))


def is_interpretation(p: Program) -> bool:
    return p.is_ground and all(r.is_fact for r in p)


def program_atoms(p: Program) -> frozenset[Atom]:
    out: set[Atom] = set()
    for r in p:
        out.add(r.head)
        out.update(r.body)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Structural operators


def head_of(p: Program) -> frozenset[Atom]:
    return frozenset(r.head for r in p)


def body_of(p: Program) -> frozenset[Atom]:
    out: set[Atom] = set()
    for r in p:
        out.update(r.body)
    return frozenset(out)


def facts(p: Program) -> Program:
    return Program(r for r in p if r.is_fact)


def proper(p: Program) -> Program:
    return Program(r for r in p if not r.is_fact)


def dual(p: Program) -> Program:
    """Facts unchanged; every proper rule's arrows reversed, one rule per
    body atom.  Not an involution in general (only when proper rules have
    singleton bodies)."""
    out = [r for r in p if r.is_fact]
    for r in p:
        for a in r.body:
            out.append(make_rule(a, (r.head,)))
    return Program(out)


def rule_width(r: Rule) -> int:
    """Number of bound variables: those occurring in both head and body."""
    if r.is_fact:
        return 0
    hv = atom_vars(r.head)
    bv: set[str] = set()
    for a in r.body:
        atom_vars(a, bv)
    return len(hv & bv)


def width(p: Program) -> int:
    return max((rule_width(r) for r in p), default=0)


# ---------------------------------------------------------------------------
# Signatures, Herbrand bases, grounding


@dataclass(frozen=True)
class Signature:
    predicates: frozenset[tuple[str, int]]
    functions: frozenset[tuple[str, int]]
    constants: frozenset[str]

    def __or__(self, other: "Signature") -> "Signature":
        return Signature(
            self.predicates | other.predicates,
            self.functions | other.functions,
            self.constants | other.constants,
        )


def _collect_term_symbols(t: Term, fns: set[tuple[str, int]], consts: set[str]) -> None:
    if isinstance(t, Const):
        consts.add(t.name)
    elif isinstance(t, Compound):
        fns.add((t.functor, len(t.args)))
        for a in t.args:
            _collect_term_symbols(a, fns, consts)


def signature_of(*programs: Program, atoms: Iterable[Atom] = (),
                 extra_constants: Iterable[str] = ()) -> Signature:
    """Exactly the symbols occurring in the given programs and atoms, plus
    optional user-declared constants."""
    preds: set[tuple[str, int]] = set()
    fns: set[tuple[str, int]] = set()
    consts: set[str] = set(extra_constants)

    def see(a: Atom) -> None:
        preds.add((a.pred, len(a.args)))
        for t in a.args:
            _collect_term_symbols(t, fns, consts)

    for p in programs:
        for r in p:
            see(r.head)
            for a in r.body:
                see(a)
    for a in atoms:
        see(a)
    return Signature(frozenset(preds), frozenset(fns), frozenset(consts))


def herbrand_terms(sig: Signature, depth: int) -> list[Term]:
    """All ground terms of nesting depth <= depth, monotone in depth."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if sig.functions and not sig.constants:
        raise ValueError(
            "empty ground term universe: function symbols without constants"
        )
    all_terms: list[Term] = [Const(c) for c in sorted(sig.constants)]
    known: set[Term] = set(all_terms)
    for _ in range(depth):
        prev = list(all_terms)
        new: list[Term] = []
        for f, n in sorted(sig.functions):
            for args in product(prev, repeat=n):
                t = Compound(f, args)
                if t not in known:
                    known.add(t)
                    new.append(t)
        if not new:
            break
        all_terms.extend(new)
    return sorted(all_terms, key=term_key)


def herbrand_base(sig: Signature, depth: int) -> frozenset[Atom]:
    """Ground atoms whose argument terms have nesting depth <= depth."""
    terms = herbrand_terms(sig, depth)
    out: set[Atom] = set()
    for pred, n in sorted(sig.predicates):
        if n == 0:
            out.add(Atom(pred))
        else:
            for args in product(terms, repeat=n):
                out.add(Atom(pred, args))
    return frozenset(out)


def gnd(p: Program, sig: Signature | None = None, depth: int = 0) -> Program:
    """All ground instances of the rules of ``p`` with variables drawn from
    the depth-bounded term universe.  Exact for function-free signatures."""
    if sig is None:
        sig = signature_of(p)
    terms = herbrand_terms(sig, depth)
    out: list[Rule] = []
    for r in p:
        names = sorted(rule_vars(r))
        if not names:
            out.append(r)
            continue
        for combo in product(terms, repeat=len(names)):
            s: Subst = dict(zip(names, combo))
            out.append(subst_rule(r, s))
    return Program(out)


# ---------------------------------------------------------------------------
# Unit programs, reducts and body-editing programs


def unit_program(sig: Signature) -> Program:
    """One rule p(v1,...,vn) <- p(v1,...,vn) per predicate in scope; the
    neutral element of composition restricted to the working signature."""
    out: list[Rule] = []
    for pred, n in sorted(sig.predicates):
        args = tuple(Var(f"v{i}") for i in range(1, n + 1))
        a = Atom(pred, args)
        out.append(Rule(a, (a,)))
    return Program(out)


def unit_restricted(atoms: Iterable[Atom]) -> Program:
    """The ground unit slice {A <- A | A in I}."""
    atoms = list(atoms)
    for a in atoms:
        if not atom_is_ground(a):
            raise ValueError(f"unit_restricted needs ground atoms: {a}")
    return Program(make_rule(a, (a,)) for a in sorted(set(atoms), key=atom_key))


def _check_subset(i: Iterable[Atom], hb: Iterable[Atom]) -> tuple[frozenset[Atom], frozenset[Atom]]:
    iset, hbset = frozenset(i), frozenset(hb)
    if not iset <= hbset:
        missing = sorted(iset - hbset, key=atom_key)
        raise ValueError(f"atoms outside the Herbrand base: {missing}")
    return iset, hbset


def body_minus(i: Iterable[Atom], hb: Iterable[Atom]) -> Program:
    """Right-composition program deleting the atoms of ``i`` from rule
    bodies: the ground unit over HB-I together with ``i`` as facts."""
    iset, hbset = _check_subset(i, hb)
    return unit_restricted(hbset - iset) | interpretation(iset)


def body_plus(i: Iterable[Atom], hb: Iterable[Atom]) -> Program:
    """Right-composition program inserting the atoms of ``i`` into proper
    rule bodies: {A <- {A} u I | A in HB}."""
    iset, hbset = _check_subset(i, hb)
    return Program(
        make_rule(a, (a, *iset)) for a in sorted(hbset, key=atom_key)
    )


def _require_ground(p: Program, op: str) -> None:
    if not p.is_ground:
        raise ValueError(f"{op} requires a ground program")


def left_reduct(p: Program, i: Iterable[Atom]) -> Program:
    """Rules whose head the interpretation satisfies."""
    _require_ground(p, "left_reduct")
    iset = frozenset(i)
    return Program(r for r in p if r.head in iset)


def right_reduct(p: Program, i: Iterable[Atom]) -> Program:
    """Rules whose body the interpretation satisfies."""
    _require_ground(p, "right_reduct")
    iset = frozenset(i)
    return Program(r for r in p if set(r.body) <= iset)
