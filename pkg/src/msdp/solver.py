"""Backward induction and its brute-force optimality oracles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Mapping

from .enumeration import CapExceededError
from .reports import OracleReport
from .sdp import SdpSpec, check_solvable, require_valid
from .uncertainty import m_map

DEFAULT_ENUM_CAP = 10 ** 6


@dataclass(frozen=True)
class Policy:
    step: int
    choice: Mapping[str, str]


@dataclass(frozen=True)
class PolicySeq:
    start_step: int
    policies: tuple[Policy, ...]

    def __post_init__(self):
        for i, p in enumerate(self.policies):
            if p.step != self.start_step + i:
                raise ValueError(f"policy {i} is for step {p.step}, "
                                 f"expected {self.start_step + i}")

    def __len__(self) -> int:
        return len(self.policies)

    def tail(self) -> "PolicySeq":
        return PolicySeq(self.start_step + 1, self.policies[1:])

    def to_jsonable(self) -> dict:
        return {"start_step": self.start_step,
                "policies": [dict(p.choice) for p in self.policies]}

    @classmethod
    def from_choices(cls, start_step: int, choices) -> "PolicySeq":
        return cls(start_step, tuple(Policy(start_step + i, dict(c))
                                     for i, c in enumerate(choices)))


def _local_value(spec: SdpSpec, t: int, x: str, y: str, tail_values: Mapping[str, Any]):
    """meas of (reward plus tail value) over the transition structure."""
    plus, reward = spec.alg.plus, spec.reward_at
    mx1 = spec.next_at(t, x, y)
    return spec.measure.apply(
        m_map(lambda x1: plus(reward(t, x, y, x1), tail_values[x1]), mx1))


def _value_table(spec: SdpSpec, ps: PolicySeq) -> dict[str, Any]:
    """val(ps, x) for every x at ps.start_step, computed bottom-up."""
    t, n = ps.start_step, len(ps)
    table = {x: spec.alg.zero for x in spec.states_at(t + n)}
    for i in range(n - 1, -1, -1):
        p = ps.policies[i]
        prev = table
        table = {x: _local_value(spec, t + i, x, p.choice[x], prev)
                 for x in spec.states_at(t + i)}
    return table


def _val_naive(spec: SdpSpec, ps: PolicySeq, x: str):
    if not ps.policies:
        return spec.alg.zero
    rest = ps.tail()
    y = ps.policies[0].choice[x]
    return _local_value(spec, ps.start_step, x, y,
                        _LazyTable(spec, rest))


class _LazyTable:
    """Recurses per lookup so the naive route really is the textbook recursion."""

    def __init__(self, spec: SdpSpec, ps: PolicySeq):
        self._spec, self._ps = spec, ps

    def __getitem__(self, x: str):
        return _val_naive(self._spec, self._ps, x)


def val(spec: SdpSpec, ps: PolicySeq, x: str, naive: bool = False):
    """Value of following ps from state x: zero for the empty sequence, else
    the measured combination of reward and recursive value over next."""
    require_valid(spec)
    check_solvable(spec, ps.start_step, len(ps))
    if x not in spec.states_at(ps.start_step):
        raise ValueError(f"unknown state {x!r} at step {ps.start_step}")
    if naive:
        return _val_naive(spec, ps, x)
    return _value_table(spec, ps)[x]


def cval(spec: SdpSpec, ps: PolicySeq, x: str, y: str):
    """Value at x of taking y now and following ps afterwards."""
    require_valid(spec)
    t = ps.start_step - 1
    check_solvable(spec, t, len(ps) + 1)
    if y not in spec.controls_at(t, x):
        raise ValueError(f"control {y!r} not admissible at step {t}, state {x!r}")
    return _local_value(spec, t, x, y, _value_table(spec, ps))


def _argmax_control(spec: SdpSpec, t: int, x: str, tail_values: Mapping[str, Any]):
    """First control (declared order) whose cval no other control exceeds."""
    ys = spec.controls_at(t, x)
    best_y, best_v = ys[0], _local_value(spec, t, x, ys[0], tail_values)
    for y in ys[1:]:
        v = _local_value(spec, t, x, y, tail_values)
        if not spec.alg.leq(v, best_v):
            best_y, best_v = y, v
    return best_y, best_v


def opt_ext(spec: SdpSpec, ps: PolicySeq) -> Policy:
    """Optimal extension: per-state argmax of cval against the tail ps."""
    require_valid(spec)
    t = ps.start_step - 1
    check_solvable(spec, t, len(ps) + 1)
    table = _value_table(spec, ps)
    return Policy(t, {x: _argmax_control(spec, t, x, table)[0]
                      for x in spec.states_at(t)})


def bi(spec: SdpSpec, t: int, n: int) -> PolicySeq:
    """Backward induction: prepend optimal extensions onto the empty sequence."""
    require_valid(spec)
    check_solvable(spec, t, n)
    policies: list[Policy] = []
    table = {x: spec.alg.zero for x in spec.states_at(t + n)}
    for step in range(t + n - 1, t - 1, -1):
        choice, new_table = {}, {}
        for x in spec.states_at(step):
            y, v = _argmax_control(spec, step, x, table)
            choice[x], new_table[x] = y, v
        policies.insert(0, Policy(step, choice))
        table = new_table
    return PolicySeq(t, tuple(policies))


def count_policy_seqs(spec: SdpSpec, t: int, n: int) -> int:
    total = 1
    for step in range(t, t + n):
        for x in spec.states_at(step):
            total *= len(spec.controls_at(step, x))
    return total


def enumerate_policy_seqs(spec: SdpSpec, t: int, n: int,
                          cap: int = DEFAULT_ENUM_CAP) -> Iterator[PolicySeq]:
    """All length-n policy sequences from step t, lexicographic in control order."""
    require_valid(spec)
    check_solvable(spec, t, n)
    total = count_policy_seqs(spec, t, n)
    if total > cap:
        raise CapExceededError(f"{total} policy sequences exceed the cap {cap}")
    per_step = []
    for step in range(t, t + n):
        xs = spec.states_at(step)
        combos = itertools.product(*(spec.controls_at(step, x) for x in xs))
        per_step.append([Policy(step, dict(zip(xs, combo))) for combo in combos])
    return (PolicySeq(t, seq) for seq in itertools.product(*per_step))


def _resolve_value_fn(value_fn) -> tuple[Callable, str]:
    if value_fn == "val" or value_fn is val:
        return val, "val"
    if value_fn == "val_prime":
        from .trajectories import val_prime
        return val_prime, "val_prime"
    if callable(value_fn):
        return value_fn, getattr(value_fn, "__name__", "custom")
    raise ValueError(f"unknown value function {value_fn!r}")


def check_optimality(spec: SdpSpec, ps: PolicySeq, value_fn="val",
                     cap: int = DEFAULT_ENUM_CAP) -> OracleReport:
    """Exhaustively compare ps against every same-shape policy sequence."""
    fn, fname = _resolve_value_fn(value_fn)
    t = ps.start_step
    best = {x: fn(spec, ps, x) for x in spec.states_at(t)}
    cases = 0
    for i, rival in enumerate(enumerate_policy_seqs(spec, t, len(ps), cap)):
        for x in spec.states_at(t):
            cases += 1
            v = fn(spec, rival, x)
            if not spec.alg.leq(v, best[x]):
                witness = {"index": i, "policy_seq": rival.to_jsonable(), "state": x,
                           "value": v, "claimed_optimal_value": best[x]}
                return OracleReport(f"optimality[{fname}]", False, cases, witness)
    return OracleReport(f"optimality[{fname}]", True, cases)


def check_bellman(spec: SdpSpec, t: int, n: int,
                  cap: int = DEFAULT_ENUM_CAP) -> OracleReport:
    """Verify that an exhaustively-optimal tail stays optimal under opt_ext."""
    name = f"bellman[t={t},n={n}]"
    tail = bi(spec, t + 1, n)
    cases = 0
    inner = check_optimality(spec, tail, "val", cap)
    cases += inner.cases
    if not inner.passed:
        witness = dict(inner.witness or {})
        witness["stage"] = "tail"
        return OracleReport(name, False, cases, witness)
    ext = PolicySeq(t, (opt_ext(spec, tail),) + tail.policies)
    outer = check_optimality(spec, ext, "val", cap)
    cases += outer.cases
    if not outer.passed:
        witness = dict(outer.witness or {})
        witness["stage"] = "extended"
        return OracleReport(name, False, cases, witness)
    return OracleReport(name, True, cases)
