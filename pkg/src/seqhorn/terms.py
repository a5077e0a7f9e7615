"""First-order terms, atoms and substitutions over an unranked language.

Terms are immutable trees: variables, constants, and compound terms with
at least one argument (a zero-argument compound is a constant).  The same
functor symbol may occur with several arities.  Atoms carry a predicate
symbol and a possibly empty argument tuple; an atom with no arguments is
propositional.

A substitution is a plain ``dict`` from variable names to terms.  The
unifiers produced here are idempotent: no binding's value mentions a bound
variable, so applying a unifier twice equals applying it once.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Compound:
    functor: str
    args: "tuple[Term, ...]"

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError("compound terms need at least one argument; use Const")


Term = Union[Var, Const, Compound]

Subst = dict[str, Term]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        from .syntax import atom_to_text

        return atom_to_text(self)


def compound(functor: str, *args: Term) -> Compound:
    return Compound(functor, tuple(args))


def atom(pred: str, *args: Term) -> Atom:
    return Atom(pred, tuple(args))


# ---------------------------------------------------------------------------
# Variables and groundness


def term_vars(t: Term, acc: set[str] | None = None) -> set[str]:
    """Set of variable names occurring in ``t``."""
    if acc is None:
        acc = set()
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, Compound):
        for a in t.args:
            term_vars(a, acc)
    return acc


def atom_vars(a: Atom, acc: set[str] | None = None) -> set[str]:
    if acc is None:
        acc = set()
    for t in a.args:
        term_vars(t, acc)
    return acc


def term_var_order(t: Term, seen: list[str]) -> None:
    """Append variable names to ``seen`` in first-occurrence order."""
    if isinstance(t, Var):
        if t.name not in seen:
            seen.append(t.name)
    elif isinstance(t, Compound):
        for a in t.args:
            term_var_order(a, seen)


def atom_var_order(a: Atom, seen: list[str]) -> None:
    for t in a.args:
        term_var_order(t, seen)


def term_is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Compound):
        return all(term_is_ground(a) for a in t.args)
    return True


def atom_is_ground(a: Atom) -> bool:
    return all(term_is_ground(t) for t in a.args)


# ---------------------------------------------------------------------------
# Substitution application


def subst_term(t: Term, s: Subst) -> Term:
    if isinstance(t, Var):
        return s.get(t.name, t)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(subst_term(a, s) for a in t.args))
    return t


def subst_atom(a: Atom, s: Subst) -> Atom:
    if not a.args:
        return a
    return Atom(a.pred, tuple(subst_term(t, s) for t in a.args))


# ---------------------------------------------------------------------------
# Unification (occurs check always on)


def _occurs(name: str, t: Term) -> bool:
    if isinstance(t, Var):
        return t.name == name
    if isinstance(t, Compound):
        return any(_occurs(name, a) for a in t.args)
    return False


def _bind(v: Var, t: Term, s: Subst) -> Subst | None:
    # t is already resolved under s; keep s idempotent by rewriting old values.
    if isinstance(t, Var) and t.name == v.name:
        return s
    if _occurs(v.name, t):
        return None
    one: Subst = {v.name: t}
    out = {k: subst_term(u, one) for k, u in s.items()}
    out[v.name] = t
    return out


def _unify_terms(x: Term, y: Term, s: Subst) -> Subst | None:
    x = subst_term(x, s)
    y = subst_term(y, s)
    if x == y:
        return s
    if isinstance(x, Var):
        return _bind(x, y, s)
    if isinstance(y, Var):
        return _bind(y, x, s)
    if isinstance(x, Compound) and isinstance(y, Compound):
        if x.functor != y.functor or len(x.args) != len(y.args):
            return None
        for a, b in zip(x.args, y.args):
            nxt = _unify_terms(a, b, s)
            if nxt is None:
                return None
            s = nxt
        return s
    return None


def unify(a: Atom, b: Atom, s: Subst | None = None) -> Subst | None:
    """Most general unifier of two atoms, or None.

    The result is idempotent and satisfies ``subst_atom(a, s) ==
    subst_atom(b, s)``.  Failure (predicate or arity mismatch, clash,
    occurs check) is a None return, not an exception.
    """
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    s = {} if s is None else dict(s)
    for x, y in zip(a.args, b.args):
        nxt = _unify_terms(x, y, s)
        if nxt is None:
            return None
        s = nxt
    return s


def unify_pairs(pairs: Iterable[tuple[Atom, Atom]]) -> Subst | None:
    """Single substitution unifying every pair simultaneously, or None."""
    s: Subst = {}
    for a, b in pairs:
        nxt = unify(a, b, s)
        if nxt is None:
            return None
        s = nxt
    return s


# ---------------------------------------------------------------------------
# Fresh variable names

class FreshVars:
    """Per-computation source of variable names unused anywhere else.

    Issued names start with ``_G`` and therefore never collide with
    canonical names (``v1``, ``v2``, ...).  ``avoid`` guards against user
    supplied names, e.g. from a query.
    """

    def __init__(self, avoid: Iterable[str] = ()) -> None:
        self._avoid = set(avoid)
        self._counter = count(1)

    def __iter__(self) -> Iterator[str]:
        return self

    def __next__(self) -> str:
        while True:
            name = f"_G{next(self._counter)}"
            if name not in self._avoid:
                return name


# ---------------------------------------------------------------------------
# Structural total order used for canonical forms

_VAR, _CONST, _COMPOUND = 0, 1, 2


def term_key(t: Term, named_vars: bool = True):
    """Sort key realizing a fixed total order on terms.

    With ``named_vars=False`` all variables compare equal (the first-pass
    order used before canonical renaming).
    """
    if isinstance(t, Var):
        return (_VAR, t.name if named_vars else "")
    if isinstance(t, Const):
        return (_CONST, t.name)
    return (_COMPOUND, t.functor, len(t.args),
            tuple(term_key(a, named_vars) for a in t.args))


def atom_key(a: Atom, named_vars: bool = True):
    """Predicate name, arity, then structural order on arguments."""
    return (a.pred, len(a.args), tuple(term_key(t, named_vars) for t in a.args))
