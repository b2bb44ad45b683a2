"""Backward induction and the brute-force oracles it is checked against."""

import pytest

from msdp.enumeration import CapExceededError
from msdp.measures import make_measure
from msdp.sdp import SdpSpec
from msdp.solver import (
    Policy,
    PolicySeq,
    bi,
    check_bellman,
    check_optimality,
    count_policy_seqs,
    cval,
    enumerate_policy_seqs,
    opt_ext,
    val,
)
from msdp.uncertainty import UncertaintyKind, nondet
from tests.test_sdp import INT, tiny_spec

HLH = [{"Good": "High", "Bad": "High"},
       {"Good": "Low", "Bad": "Low"},
       {"Good": "High", "Bad": "High"}]


class TestPolicySeq:
    def test_steps_must_be_consecutive(self):
        with pytest.raises(ValueError, match="expected 1"):
            PolicySeq(0, (Policy(0, {"a": "go"}), Policy(2, {"a": "go"})))

    def test_from_choices_and_tail(self):
        ps = PolicySeq.from_choices(3, [{"a": "x"}, {"a": "y"}])
        assert [p.step for p in ps.policies] == [3, 4]
        assert ps.tail().start_step == 4
        assert len(ps.tail()) == 1

    def test_to_jsonable(self):
        ps = PolicySeq.from_choices(0, [{"a": "x"}])
        assert ps.to_jsonable() == {"start_step": 0, "policies": [{"a": "x"}]}


class TestVal:
    def test_sum_of_fixed_policy(self, climate_sum):
        ps = PolicySeq.from_choices(0, HLH)
        assert val(climate_sum, ps, "Good") == 13

    def test_naive_route_agrees_with_table_route(self, climate_sum, climate_min):
        for spec in (climate_sum, climate_min):
            for n in range(4):
                for ps in enumerate_policy_seqs(spec, 0, n):
                    for x in spec.states_at(0):
                        assert val(spec, ps, x) == val(spec, ps, x, naive=True)

    def test_empty_sequence_is_zero(self, climate_sum):
        ps = PolicySeq(0, ())
        assert val(climate_sum, ps, "Good") == 0

    def test_unknown_state_rejected(self, climate_sum):
        with pytest.raises(ValueError, match="unknown state 'Fine' at step 0"):
            val(climate_sum, PolicySeq(0, ()), "Fine")


class TestCval:
    def test_step2_values_with_empty_tail(self, climate_min):
        empty = PolicySeq(3, ())
        got = {(x, y): cval(climate_min, empty, x, y)
               for x in ("Good", "Bad") for y in ("High", "Low")}
        assert got == {("Good", "High"): 0, ("Good", "Low"): 3,
                       ("Bad", "High"): 0, ("Bad", "Low"): 1}

    def test_step1_values_against_optimal_tail(self, climate_min):
        tail = bi(climate_min, 2, 1)
        got = {(x, y): cval(climate_min, tail, x, y)
               for x in ("Good", "Bad") for y in ("High", "Low")}
        assert got == {("Good", "High"): 1, ("Good", "Low"): 6,
                       ("Bad", "High"): 1, ("Bad", "Low"): 2}

    def test_inadmissible_control_rejected(self, climate_min):
        with pytest.raises(ValueError, match="control 'Sideways' not admissible"):
            cval(climate_min, PolicySeq(1, ()), "Good", "Sideways")


class TestOptExt:
    def test_extends_optimal_tail(self, climate_min):
        tail = bi(climate_min, 2, 1)
        p = opt_ext(climate_min, tail)
        assert p.step == 1
        assert p.choice == {"Good": "Low", "Bad": "Low"}

    def test_ties_go_to_first_declared_control(self):
        # both controls reach the same value; "stop" is declared first
        spec = tiny_spec(
            controls={(0, "a"): ("stop", "go"), (0, "b"): ("go",)},
            next={(0, "a", "stop"): nondet(["a"]), (0, "a", "go"): nondet(["a"]),
                  (0, "b", "go"): nondet(["b"])},
            reward={(0, "a", "stop", "a"): 7, (0, "a", "go", "a"): 7,
                    (0, "b", "go", "b"): 0},
        )
        p = opt_ext(spec, PolicySeq(1, ()))
        assert p.choice["a"] == "stop"


class TestBi:
    def test_zero_steps(self, climate_min):
        assert bi(climate_min, 0, 0) == PolicySeq(0, ())

    def test_min_and_max_choose_low_everywhere(self, climate_min, climate_max):
        for spec, vals in ((climate_min, {"Good": 9, "Bad": 3}),
                           (climate_max, {"Good": 9, "Bad": 9})):
            ps = bi(spec, 0, 3)
            assert all(p.choice == {"Good": "Low", "Bad": "Low"} for p in ps.policies)
            for x, v in vals.items():
                assert val(spec, ps, x) == v

    def test_sum_policies_and_values(self, climate_sum):
        ps = bi(climate_sum, 0, 3)
        assert [p.choice for p in ps.policies] == [
            {"Good": "High", "Bad": "Low"},
            {"Good": "High", "Bad": "Low"},
            {"Good": "Low", "Bad": "Low"},
        ]
        assert val(climate_sum, ps, "Good") == 22
        assert val(climate_sum, ps, "Bad") == 24

    def test_prefix_of_longer_run_extends_shorter(self, climate_min):
        # the last n policies of bi(t, n+1) solve the same subproblem as bi(t+1, n)
        longer = bi(climate_min, 0, 3)
        shorter = bi(climate_min, 1, 2)
        assert longer.policies[1:] == shorter.policies


class TestEnumeration:
    def test_counts(self, climate_min, scheduling):
        assert [count_policy_seqs(climate_min, 0, n) for n in range(4)] == [1, 4, 16, 64]
        assert [count_policy_seqs(scheduling, 0, n) for n in range(4)] == [1, 2, 8, 32]

    def test_lexicographic_order_last_step_fastest(self, climate_min):
        seqs = list(enumerate_policy_seqs(climate_min, 0, 3))
        assert len(seqs) == 64
        assert [p.choice for p in seqs[5].policies] == [
            {"Good": "High", "Bad": "High"},
            {"Good": "High", "Bad": "Low"},
            {"Good": "High", "Bad": "Low"},
        ]

    def test_cap_raises_before_iteration(self, climate_min):
        with pytest.raises(CapExceededError):
            enumerate_policy_seqs(climate_min, 0, 3, cap=63)


class TestOracles:
    def test_bi_is_optimal_under_both_value_functions(self, climate_min, climate_max):
        for spec in (climate_min, climate_max):
            ps = bi(spec, 0, 3)
            for fn in ("val", "val_prime"):
                report = check_optimality(spec, ps, fn)
                assert report.passed, report.witness
                assert report.cases == 128

    def test_sum_optimal_for_val_but_not_val_prime(self, climate_sum):
        ps = bi(climate_sum, 0, 3)
        assert check_optimality(climate_sum, ps, "val").passed
        report = check_optimality(climate_sum, ps, "val_prime")
        assert not report.passed
        assert report.witness["index"] == 5
        assert report.witness["state"] == "Good"
        assert report.witness["value"] == 32
        assert report.witness["claimed_optimal_value"] == 27

    def test_bellman_holds_for_min_and_max(self, climate_min, climate_max):
        for spec in (climate_min, climate_max):
            for t in (0, 1):
                for n in range(3):
                    report = check_bellman(spec, t, n)
                    assert report.passed, report.witness

    def test_bellman_witness_marks_failing_stage(self):
        # a value function that prefers the worst rival flips the verdict
        spec = tiny_spec()
        ps = bi(spec, 0, 1)
        report = check_optimality(spec, ps, lambda s, p, x: -val(s, p, x))
        assert report.passed  # single control, nothing to beat
        assert report.name == "optimality[<lambda>]"
