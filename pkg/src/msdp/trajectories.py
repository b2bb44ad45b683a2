"""Trajectory semantics: the specification-side value function.

`val_prime` measures once over whole-trajectory reward sums, in contrast to
`val`, which measures incrementally at every step. The two agree exactly when
the measure satisfies the algebra conditions (and always in the deterministic
case); `check_val_equivalence` sweeps for the first disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import values_equal
from .reports import OracleReport
from .sdp import SdpSpec, check_solvable, require_valid
from .solver import DEFAULT_ENUM_CAP, PolicySeq, enumerate_policy_seqs, val
from .uncertainty import MStruct, m_bind, m_is_not_empty, m_map, m_pure


@dataclass(frozen=True)
class StateCtrlSeq:
    """One trajectory: (state, control) pairs ending in a final state."""

    start_step: int
    steps: tuple[tuple[str, str], ...]
    final_state: str

    @property
    def head(self) -> str:
        return self.steps[0][0] if self.steps else self.final_state

    def __repr__(self) -> str:
        return render_traj(self)


def render_traj(tr: StateCtrlSeq) -> str:
    if not tr.steps:
        return f"Last {tr.final_state}"
    chain = " -> ".join(f"{x}.{y}" for x, y in tr.steps)
    return f"{chain} -> {tr.final_state}"


def trj(spec: SdpSpec, ps: PolicySeq, x: str) -> MStruct:
    """The structure of possible trajectories from x under ps."""
    require_valid(spec)
    check_solvable(spec, ps.start_step, len(ps))
    if x not in spec.states_at(ps.start_step):
        raise ValueError(f"unknown state {x!r} at step {ps.start_step}")
    out = _trj(spec, ps, x)
    assert m_is_not_empty(out), "trj produced an empty structure on a valid spec"
    return out


def _trj(spec: SdpSpec, ps: PolicySeq, x: str) -> MStruct:
    t = ps.start_step
    if not ps.policies:
        return m_pure(spec.kind, StateCtrlSeq(t, (), x))
    y = ps.policies[0].choice[x]
    rest = ps.tail()
    tails = m_bind(spec.next_at(t, x, y), lambda x1: _trj(spec, rest, x1))
    return m_map(lambda tr: StateCtrlSeq(t, ((x, y),) + tr.steps, tr.final_state),
                 tails)


def sum_r(spec: SdpSpec, traj: StateCtrlSeq):
    """Right-fold of per-transition rewards; zero for a bare final state."""
    rewards = []
    for i, (x, y) in enumerate(traj.steps):
        nxt = traj.steps[i + 1][0] if i + 1 < len(traj.steps) else traj.final_state
        rewards.append(spec.reward_at(traj.start_step + i, x, y, nxt))
    total = spec.alg.zero
    for r in reversed(rewards):
        total = spec.alg.plus(r, total)
    return total


def val_prime(spec: SdpSpec, ps: PolicySeq, x: str):
    """Measured total reward: meas of sum_r over all trajectories."""
    return spec.measure.apply(m_map(lambda tr: sum_r(spec, tr), trj(spec, ps, x)))


def check_val_equivalence(spec: SdpSpec, t: int, n_max: int,
                          cap: int = DEFAULT_ENUM_CAP) -> OracleReport:
    """Compare val and val_prime on every sequence of length <= n_max.

    A discrepancy is a genuine property of the measure, not a solver bug; the
    report carries both values.
    """
    require_valid(spec)
    check_solvable(spec, t, n_max)
    cases = 0
    for n in range(n_max + 1):
        for i, ps in enumerate(enumerate_policy_seqs(spec, t, n, cap)):
            for x in spec.states_at(t):
                cases += 1
                a, b = val(spec, ps, x), val_prime(spec, ps, x)
                if not values_equal(spec.alg, a, b):
                    witness = {"n": n, "index": i, "policy_seq": ps.to_jsonable(),
                               "state": x, "val": a, "val_prime": b}
                    return OracleReport("valEquivalence", False, cases, witness)
    return OracleReport("valEquivalence", True, cases)


def check_trj_not_empty(spec: SdpSpec, t: int, n_max: int,
                        cap: int = DEFAULT_ENUM_CAP) -> OracleReport:
    """trj never returns an empty structure on a valid spec."""
    require_valid(spec)
    check_solvable(spec, t, n_max)
    cases = 0
    for n in range(n_max + 1):
        for i, ps in enumerate(enumerate_policy_seqs(spec, t, n, cap)):
            for x in spec.states_at(t):
                cases += 1
                if not m_is_not_empty(_trj(spec, ps, x)):
                    return OracleReport("trjNotEmpty", False, cases,
                                        {"n": n, "index": i,
                                         "policy_seq": ps.to_jsonable(), "state": x})
    return OracleReport("trjNotEmpty", True, cases)
