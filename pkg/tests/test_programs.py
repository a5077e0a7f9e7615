"""Structural program operators: duals, widths, groundings, reducts."""

import random

import pytest

from seqhorn import (
    Atom,
    Program,
    Signature,
    body_minus,
    body_of,
    body_plus,
    compose,
    compose_ground,
    dual,
    facts,
    gnd,
    head_of,
    herbrand_base,
    interpretation,
    left_reduct,
    parse_program,
    proper,
    right_reduct,
    signature_of,
    unit_program,
    unit_restricted,
    width,
)
from conftest import PROP_ATOMS, random_prop_program, random_interpretation


def atoms(*names: str) -> frozenset[Atom]:
    return frozenset(Atom(n) for n in names)


class TestHeadBodyFactsProper:
    def test_nat_split(self, nat):
        assert facts(nat) == parse_program("nat(0).")
        assert proper(nat) == parse_program("nat(s(X)) :- nat(X).")

    def test_empty(self):
        assert head_of(Program()) == frozenset()

    def test_body(self):
        p = parse_program("a :- b, c.")
        assert body_of(p) == atoms("b", "c")


class TestDual:
    def test_single_rule(self):
        assert dual(parse_program("a :- b, c.")) == parse_program("b :- a.\nc :- a.")

    def test_plus_append_bridge(self, plus, append, q_plus_append, s_plus_append):
        dq = dual(q_plus_append)
        expected = parse_program(
            "plus(0,Y,Y) :- append([],Y,Y).\n"
            "plus(s(X),Y,s(Z)) :- append([U|X],Y,[V|Z])."
        )
        assert dq == expected
        assert compose(compose(dq, append), dual(s_plus_append)) == plus

    def test_interpretation_fixed(self):
        i = interpretation(atoms("a", "b"))
        assert dual(i) == i

    def test_involution_on_singleton_bodies(self):
        p = parse_program("a :- b.\nc :- d.\ne.")
        assert dual(dual(p)) == p


class TestWidth:
    def test_member(self, member):
        assert width(member) == 2

    def test_append(self, append):
        assert width(append) == 3

    def test_ground_program(self):
        assert width(parse_program("a :- b.\nc.")) == 0


class TestHerbrandBase:
    def _sig(self):
        return Signature(
            predicates=frozenset({("nat", 1)}),
            functions=frozenset({("s", 1)}),
            constants=frozenset({"0"}),
        )

    def test_depth_zero(self):
        assert herbrand_base(self._sig(), 0) == frozenset({parse_program("nat(0).").rules[0].head})

    def test_depth_two(self):
        hb = herbrand_base(self._sig(), 2)
        expected = parse_program("nat(0).\nnat(s(0)).\nnat(s(s(0))).")
        assert hb == head_of(expected)

    def test_function_free_depth_irrelevant(self):
        sig = Signature(frozenset({("p", 1)}), frozenset(), frozenset({"a"}))
        assert herbrand_base(sig, 0) == herbrand_base(sig, 3)

    def test_error_without_constants(self):
        sig = Signature(frozenset({("p", 1)}), frozenset({("f", 1)}), frozenset())
        with pytest.raises(ValueError):
            herbrand_base(sig, 1)

    def test_monotone_in_depth(self):
        for d in range(3):
            assert herbrand_base(self._sig(), d) <= herbrand_base(self._sig(), d + 1)


class TestGnd:
    def test_two_constants(self):
        p = parse_program("p(X) :- q(X).")
        sig = signature_of(p, extra_constants=("a", "b"))
        assert gnd(p, sig, 0) == parse_program("p(a) :- q(a).\np(b) :- q(b).")

    def test_ground_fixpoint(self):
        p = parse_program("a :- b.\nc.")
        assert gnd(p, signature_of(p), 0) == p

    def test_nat_depth_two(self, nat):
        got = gnd(nat, signature_of(nat), 2)
        expected = parse_program(
            "nat(0).\n"
            "nat(s(0)) :- nat(0).\n"
            "nat(s(s(0))) :- nat(s(0)).\n"
            "nat(s(s(s(0)))) :- nat(s(s(0)))."
        )
        assert got == expected


class TestUnitProgram:
    def test_unary_predicate(self):
        sig = Signature(frozenset({("p", 1)}), frozenset(), frozenset())
        assert unit_program(sig) == parse_program("p(V1) :- p(V1).")

    def test_empty_signature(self):
        assert unit_program(Signature(frozenset(), frozenset(), frozenset())) == Program()

    def test_neutrality_random(self):
        rng = random.Random(3)
        from conftest import random_fo_program

        for _ in range(60):
            p = random_fo_program(rng)
            one = unit_program(signature_of(p))
            assert compose(p, one) == p
            assert compose(one, p) == p


class TestUnitRestricted:
    def test_two_atoms(self):
        assert unit_restricted(atoms("a", "b")) == parse_program("a :- a.\nb :- b.")

    def test_empty(self):
        assert unit_restricted(frozenset()) == Program()

    def test_left_reduct_via_composition(self):
        rng = random.Random(4)
        for _ in range(80):
            p = random_prop_program(rng)
            i = random_interpretation(rng)
            assert compose(unit_restricted(i), p) == left_reduct(p, i)
            assert compose(p, unit_restricted(i)) == right_reduct(p, i)


class TestBodyMinus:
    def test_removes_from_bodies(self):
        p = parse_program("a.\nb :- a, b.")
        hb = atoms("a", "b")
        assert compose(p, body_minus(atoms("b"), hb)) == parse_program("a.\nb :- a.")

    def test_remove_nothing(self):
        p = parse_program("a.\nb :- a.")
        assert compose(p, body_minus(frozenset(), atoms("a", "b"))) == p

    def test_swap_example(self):
        p = parse_program("c.\na :- b, c.\nb :- a, c.")
        hb = atoms("a", "b", "c")
        mid = compose(unit_restricted(atoms("a", "b")), p)
        assert compose(mid, body_minus(atoms("c"), hb)) == parse_program("a :- b.\nb :- a.")

    def test_subset_check(self):
        with pytest.raises(ValueError):
            body_minus(atoms("z"), atoms("a"))


class TestBodyPlus:
    def test_adds_to_proper_bodies(self):
        p = parse_program("a.\nb :- a.")
        hb = atoms("a", "b")
        assert compose(p, body_plus(atoms("b"), hb)) == parse_program("a.\nb :- a, b.")

    def test_add_nothing(self):
        p = parse_program("a.\nb :- a.")
        assert compose(p, body_plus(frozenset(), atoms("a", "b"))) == p

    def test_insert_then_delete_when_disjoint(self):
        # adding atoms disjoint from the bodies and deleting them restores P
        p = parse_program("a.\nb :- a.")
        hb = atoms("a", "b", "c")
        i = atoms("c")
        extended = compose(p, body_plus(i, hb))
        assert compose(extended, body_minus(i, hb)) == p


class TestReducts:
    def test_left(self):
        p = parse_program("a :- b.\nc :- d.")
        assert left_reduct(p, atoms("a")) == parse_program("a :- b.")

    def test_right(self):
        p = parse_program("a :- b.\nc :- d.")
        assert right_reduct(p, atoms("b")) == parse_program("a :- b.")

    def test_ground_required(self):
        p = parse_program("p(X) :- q(X).")
        with pytest.raises(ValueError):
            left_reduct(p, frozenset())


class TestGroundIdentities:
    def test_heads_and_bodies_via_composition(self):
        rng = random.Random(5)
        hb = interpretation(PROP_ATOMS)
        for _ in range(100):
            p = random_prop_program(rng)
            assert compose(p, hb) == interpretation(head_of(p))
            assert compose(dual(proper(p)), hb) == interpretation(body_of(p))

    def test_head_body_shrink_under_composition(self):
        rng = random.Random(6)
        for _ in range(100):
            p = random_prop_program(rng)
            r = random_prop_program(rng)
            pr = compose_ground(p, r)
            assert head_of(pr) <= head_of(p)
            assert body_of(pr) <= body_of(r)

    def test_grounding_via_unit_sandwich(self):
        rng = random.Random(7)
        from conftest import random_fo_program

        for _ in range(60):
            p = random_fo_program(rng)
            sig = signature_of(p, extra_constants=("a", "b"))
            gu = gnd(unit_program(sig), sig, 0)
            assert gnd(p, sig, 0) == compose(compose(gu, p), gu)
