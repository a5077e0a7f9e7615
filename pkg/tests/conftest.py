"""Shared fixtures and random program generators."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from seqhorn import Atom, Const, Program, Var, make_rule, parse_program

FIXTURES = Path(__file__).parent / "fixtures"

PROP_ATOMS = tuple(Atom(name) for name in "abcd")


def load_fixture(name: str) -> Program:
    path = FIXTURES / name
    return parse_program(path.read_text(), str(path))


@pytest.fixture(scope="session")
def plus() -> Program:
    return load_fixture("plus.lp")


@pytest.fixture(scope="session")
def append() -> Program:
    return load_fixture("append.lp")


@pytest.fixture(scope="session")
def q_plus_append() -> Program:
    return load_fixture("q_plus_append.lp")


@pytest.fixture(scope="session")
def s_plus_append() -> Program:
    return load_fixture("s_plus_append.lp")


@pytest.fixture(scope="session")
def member() -> Program:
    return load_fixture("member.lp")


@pytest.fixture(scope="session")
def q_member_append() -> Program:
    return load_fixture("q_member_append.lp")


@pytest.fixture(scope="session")
def s_member_append() -> Program:
    return load_fixture("s_member_append.lp")


@pytest.fixture(scope="session")
def nat() -> Program:
    return load_fixture("nat.lp")


# ---------------------------------------------------------------------------
# Random ensembles (seeded; universes <= 4 atoms, <= 4 rules, bodies <= 2)


def random_prop_program(rng: random.Random, atoms=PROP_ATOMS,
                        max_rules: int = 4, max_body: int = 2) -> Program:
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        head = rng.choice(atoms)
        body = rng.sample(atoms, k=rng.randint(0, max_body))
        rules.append(make_rule(head, body))
    return Program(rules)


def random_interpretation(rng: random.Random, atoms=PROP_ATOMS) -> frozenset[Atom]:
    return frozenset(a for a in atoms if rng.random() < 0.4)


_FO_PREDS = (("p", 1), ("q", 1), ("r", 2), ("e", 0))
_FO_TERMS = (Const("a"), Const("b"), Var("x"), Var("y"))


def random_fo_atom(rng: random.Random, ground: bool = False) -> Atom:
    pred, arity = rng.choice(_FO_PREDS)
    pool = _FO_TERMS[:2] if ground else _FO_TERMS
    return Atom(pred, tuple(rng.choice(pool) for _ in range(arity)))


def random_fo_program(rng: random.Random, max_rules: int = 4, max_body: int = 2,
                      ground: bool = False) -> Program:
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        head = random_fo_atom(rng, ground)
        body = [random_fo_atom(rng, ground) for _ in range(rng.randint(0, max_body))]
        rules.append(make_rule(head, body))
    return Program(rules)
