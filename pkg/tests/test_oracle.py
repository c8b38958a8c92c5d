from __future__ import annotations

import pytest

from impslice import (HOLE, PartialState, SizeExceeded, State, bwd_cmd,
                      check_connection, enumerate_downset, eval_cmd,
                      minimal_pairs, oracle_bwd, parse_command,
                      parse_partial_command, parse_partial_state, parse_state,
                      partialize, SliceOutcome)

from corpus import derivation_for, enumerable_entries

LAWS = ("fwd_monotone", "bwd_monotone", "deflation", "inflation",
        "galois_equivalence", "minimality")


class TestCheckConnection:
    def test_conditional_holds(self, conditional):
        report = check_connection(conditional)
        assert report.holds
        assert set(report.laws) == set(LAWS)
        assert all(law.checked > 0 for law in report.laws.values())
        assert report.input_pair_size == 8696
        assert report.output_size == 8

    def test_degenerate_skip(self):
        derivation = eval_cmd(State(()), parse_command("skip"))
        report = check_connection(derivation)
        assert report.holds
        assert report.input_pair_size == 2
        assert report.output_size == 1

    def test_assignment_cube_instance(self, assignment):
        report = check_connection(assignment)
        assert report.holds

    def test_size_gate(self, divides):
        with pytest.raises(SizeExceeded) as info:
            check_connection(divides)
        assert info.value.size == 982_240

    def test_verdicts_insensitive_to_enumeration_order(self, assignment):
        # The laws are universally quantified, so two runs (same inputs,
        # fresh enumerations) must agree verdict for verdict.
        first = check_connection(assignment)
        second = check_connection(assignment)
        assert {k: v.holds for k, v in first.laws.items()} == \
               {k: v.holds for k, v in second.laws.items()}


class TestOracleBwd:
    def test_agrees_on_conditional_criterion(self, conditional):
        criterion = parse_partial_state("x = _, y = 1, z = _")
        assert oracle_bwd(conditional, criterion) == bwd_cmd(
            conditional.trace, criterion)

    def test_all_hole_criterion(self, conditional):
        criterion = parse_partial_state("x = _, y = _, z = _")
        outcome = oracle_bwd(conditional, criterion)
        assert outcome.program_slice is HOLE
        assert outcome.input_slice == criterion

    def test_cube_line(self, assignment):
        outcome = oracle_bwd(assignment, parse_partial_state(
            "w = _, x = 1, y = 2, z = 3"))
        assert outcome == SliceOutcome(
            parse_partial_state("w = _, x = 1, y = 2, z = _"),
            parse_partial_command("z := x + y"))

    def test_size_gate(self, divides):
        with pytest.raises(SizeExceeded):
            oracle_bwd(divides, partialize(divides.output))

    @pytest.mark.parametrize("name", [
        e.name for e in enumerable_entries()])
    def test_equivalence_with_rule_driven_slicer(self, name):
        derivation = derivation_for(name)
        for criterion in enumerate_downset(partialize(derivation.output)):
            assert oracle_bwd(derivation, criterion) == bwd_cmd(
                derivation.trace, criterion), name


class TestMinimalPairs:
    def test_assignment_cube(self, assignment):
        pairs = minimal_pairs(assignment)
        assert len(pairs) == 8
        expected_kept = parse_partial_command("z := x + y")
        for outcome, maximal in pairs:
            bindings = dict(maximal.entries)
            if bindings["x"] == 1 and bindings["y"] == 2:
                assert bindings["z"] == 3
                assert outcome.program_slice == expected_kept
                assert dict(outcome.input_slice.entries)["z"] is None
            else:
                assert bindings["z"] is None
                assert outcome.program_slice is HOLE
                assert outcome.input_slice == maximal

    def test_skip_identity_pairs(self):
        derivation = eval_cmd(State.of(x=1), parse_command("skip"))
        pairs = minimal_pairs(derivation)
        assert pairs == [
            (SliceOutcome(PartialState.of(x=None), HOLE),
             PartialState.of(x=None)),
            (SliceOutcome(PartialState.of(x=1), HOLE),
             PartialState.of(x=1)),
        ]

    def test_expression_analogue(self):
        # Reading the lattice picture at the expression level: the least
        # input explaining the sum 3 is both variables at their run values.
        from impslice import bwd_aexp, eval_aexp
        from impslice.parser import _Parser

        parser = _Parser("x + y", holes=False)
        _, trace = eval_aexp(State.of(x=1, y=2), parser.run(parser.aexp))
        state, expr = bwd_aexp(trace, ("x", "y"), 3)
        assert state == PartialState.of(x=1, y=2)
        assert expr == parse_command("z := x + y").expr

    def test_idempotence_identities_hold_across_corpus(self):
        from impslice import fwd_cmd
        for entry in enumerable_entries():
            derivation = derivation_for(entry.name)
            for q in enumerate_downset(partialize(derivation.output)):
                outcome = bwd_cmd(derivation.trace, q)
                forward = fwd_cmd(derivation.trace, outcome.input_slice,
                                  outcome.program_slice)
                assert bwd_cmd(derivation.trace, forward) == outcome, entry.name
