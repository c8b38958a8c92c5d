from __future__ import annotations

import random

import pytest
from hypothesis import assume, given, settings

import strategies
from impslice import (HOLE, Add, Assign, JoinError, LatticeMismatch, NatLit,
                      PartialState, Skip, State, VarRead, While, check_prefix,
                      downset_size, enumerate_downset, join, leq,
                      parse_command, parse_partial_command, parse_state,
                      partialize, SizeExceeded)
from impslice.lattice import covers

from corpus import CONDITIONAL_PROGRAM

X, Y = VarRead("x"), VarRead("y")


def lattice_bottom(top):
    if isinstance(top, (State, PartialState)):
        from impslice import blank_state
        return blank_state(top)
    if isinstance(top, tuple):
        return tuple(lattice_bottom(part) for part in top)
    return HOLE


def brute_force_prefixes(top):
    """Independent enumeration oracle: grow prefixes from the bottom up."""
    bottom = lattice_bottom(top)
    found = {bottom}
    frontier = [bottom]
    while frontier:
        element = frontier.pop()
        for successor in covers(element, top):
            if successor not in found:
                found.add(successor)
                frontier.append(successor)
    return found


class TestLeq:
    def test_hole_below_everything(self):
        assert leq(HOLE, Add(X, Y))
        assert leq(HOLE, Skip())
        assert leq(HOLE, HOLE)

    def test_congruence(self):
        assert leq(Add(X, HOLE), Add(X, Y))
        assert not leq(Add(Y, HOLE), Add(X, Y))

    def test_states_need_identical_domains(self):
        assert not leq(PartialState.of(x=1), PartialState.of(y=1))
        assert not leq(PartialState.of(x=1, y=1), PartialState.of(y=1, x=1))
        assert leq(PartialState.of(x=None), PartialState.of(x=3))

    def test_shape_mismatch_is_false_not_an_error(self):
        assert not leq(Skip(), Add(X, Y))
        assert not leq(NatLit(1), NatLit(2))
        assert not leq(PartialState.of(x=1), Skip())

    def test_pairs_order_componentwise(self):
        top = (Assign("x", NatLit(1)), PartialState.of(x=0))
        assert leq((HOLE, PartialState.of(x=None)), top)
        assert not leq((Skip(), PartialState.of(x=None)), top)


class TestOrderLaws:
    @pytest.mark.parametrize("top_text, state_text", [
        ("y := x + 1", "x = 1"),
        ("if (x = 0) then { y := 1 } else { skip }", "x = 0, y = 2"),
        ("while (x <= 1) do { x := x + 1 }", "x = 0"),
    ])
    def test_reflexive_antisymmetric_transitive(self, top_text, state_text):
        top = (parse_command(top_text), partialize(parse_state(state_text)))
        elements = enumerate_downset(top)
        assert len(elements) <= 4096
        for a in elements:
            assert leq(a, a)
        comparable = [(a, b) for a in elements for b in elements
                      if leq(a, b)]
        for a, b in comparable:
            if leq(b, a):
                assert a == b
        below = {}
        for a, b in comparable:
            below.setdefault(b, []).append(a)
        for b, lowers in below.items():
            for a in lowers:
                for c in elements:
                    if leq(b, c):
                        assert leq(a, c)

    def test_top_is_maximum(self):
        top = parse_command(CONDITIONAL_PROGRAM)
        for element in enumerate_downset(top):
            assert leq(element, top)


class TestJoin:
    def test_componentwise(self):
        assert join(Add(X, HOLE), Add(HOLE, Y)) == Add(X, Y)

    def test_hole_is_unit(self):
        loop = While(HOLE, Skip())
        assert join(HOLE, loop) == loop
        assert join(loop, HOLE) == loop

    def test_distinct_literals_have_no_upper_bound(self):
        with pytest.raises(JoinError):
            join(NatLit(1), NatLit(2))

    def test_state_join(self):
        assert join(PartialState.of(x=1, y=None),
                    PartialState.of(x=None, y=2)) == PartialState.of(x=1, y=2)
        with pytest.raises(JoinError):
            join(PartialState.of(x=1), PartialState.of(y=1))

    @pytest.mark.parametrize("top_text", [
        "x + y * 3", None])
    def test_join_is_least_upper_bound(self, top_text):
        if top_text is None:
            top = (parse_command("x := y"), partialize(parse_state("x = 1, y = 2")))
        else:
            from impslice.parser import _Parser
            parser = _Parser(top_text, holes=False)
            top = parser.run(parser.aexp)
        elements = enumerate_downset(top)
        for a in elements:
            for b in elements:
                joined = join(a, b)
                assert leq(a, joined) and leq(b, joined)
                for upper in elements:
                    if leq(a, upper) and leq(b, upper):
                        assert leq(joined, upper)

    @given(strategies.commands(max_depth=3))
    @settings(max_examples=60)
    def test_join_idempotent_commutative(self, cmd):
        assert join(cmd, cmd) == cmd
        assert join(cmd, HOLE) == join(HOLE, cmd) == cmd


class TestCheckPrefix:
    def test_bottom_always_witnesses(self):
        witness = check_prefix(HOLE, parse_command("skip"))
        assert witness.element is HOLE

    def test_conditional_slice_is_a_prefix(self):
        program = parse_command(CONDITIONAL_PROGRAM)
        slice_cmd = parse_partial_command(
            "if (y = 1) then { _ } else { y := y + 1 } ; _")
        assert check_prefix(slice_cmd, program).top is program

    def test_mismatch_reports_position(self):
        with pytest.raises(LatticeMismatch) as info:
            check_prefix(Assign("x", NatLit(1)), Skip())
        assert "prefix" in str(info.value)

        program = parse_command("x := 1 ; y := 2")
        wrong = parse_partial_command("x := 2 ; _")
        with pytest.raises(LatticeMismatch) as info:
            check_prefix(wrong, program)
        assert info.value.position == "first.expr"


class TestDownsets:
    def test_leaf_counts(self):
        assert downset_size(NatLit(5)) == 2
        assert downset_size(Skip()) == 2

    def test_addition_example(self):
        elements = enumerate_downset(Add(X, Y))
        assert downset_size(Add(X, Y)) == 5
        assert set(elements) == {HOLE, Add(HOLE, HOLE), Add(X, HOLE),
                                 Add(HOLE, Y), Add(X, Y)}
        assert elements[0] is HOLE

    def test_enumeration_order_is_deterministic(self):
        first = enumerate_downset(Add(X, Y))
        assert first == [HOLE, Add(HOLE, HOLE), Add(HOLE, Y), Add(X, HOLE),
                         Add(X, Y)]

    def test_state_downset(self):
        elements = enumerate_downset(State.of(x=1, y=2))
        assert len(elements) == 4
        assert set(elements) == set(
            brute_force_prefixes(partialize(State.of(x=1, y=2))))

    def test_conditional_program_matches_recurrence(self):
        program = parse_command(CONDITIONAL_PROGRAM)
        assert downset_size(program) == len(enumerate_downset(program))

    def test_pair_size_multiplies(self):
        program = parse_command(CONDITIONAL_PROGRAM)
        state = partialize(parse_state("x = 1, y = 0, z = 2"))
        assert downset_size((program, state)) == (
            downset_size(program) * downset_size(state))

    def test_bound_enforced(self):
        program = parse_command(CONDITIONAL_PROGRAM)
        with pytest.raises(SizeExceeded) as info:
            enumerate_downset(program, bound=100)
        assert info.value.size == downset_size(program)

    def test_recurrence_matches_enumeration_on_random_terms(self):
        from impslice import Mul, Sub

        rng = random.Random(271828)

        def random_term(depth):
            if depth == 0 or rng.random() < 0.4:
                return rng.choice([NatLit(rng.randrange(10)), X, Y])
            op = rng.choice([Add, Sub, Mul])
            return op(random_term(depth - 1), random_term(depth - 1))

        checked = 0
        while checked < 100:
            term = random_term(rng.randrange(1, 6))
            if downset_size(term) > 2 ** 17:
                continue  # too dense to materialise; draw another
            assert downset_size(term) == len(enumerate_downset(term, 2 ** 17))
            checked += 1

    @given(strategies.commands(max_depth=3))
    @settings(max_examples=40)
    def test_every_enumerated_element_is_unique_and_below_top(self, cmd):
        assume(downset_size(cmd) <= 2048)
        elements = enumerate_downset(cmd)
        assert len(elements) == len(set(elements)) == downset_size(cmd)
        assert all(leq(element, cmd) for element in elements)


class TestCovers:
    def test_cover_reachability_matches_enumeration(self):
        top = (parse_command("x := y ; skip"),
               partialize(parse_state("x = 1, y = 2")))
        assert brute_force_prefixes(top) == set(enumerate_downset(top))

    def test_covers_step_one_level(self):
        assert covers(HOLE, Add(X, Y)) == [Add(HOLE, HOLE)]
        assert set(covers(Add(HOLE, HOLE), Add(X, Y))) == {Add(X, HOLE),
                                                           Add(HOLE, Y)}
        assert covers(Add(X, Y), Add(X, Y)) == []
