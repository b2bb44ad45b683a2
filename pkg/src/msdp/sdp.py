"""Finite decision problems: time-indexed states, controls, transitions, rewards.

States and controls are opaque string identifiers with per-step membership
tables. `states` covers steps t0 .. t0+horizon_max; `controls`, `next` and
`reward` cover the decision steps t0 .. t0+horizon_max-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .algebra import ValueAlgebra
from .measures import Measure
from .reports import ValidationReport
from .uncertainty import MStruct, UncertaintyKind, m_is_not_empty, weight_sum

WEIGHT_SUM_TOLERANCE = 1e-9


class SpecError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        lines = "\n  ".join(report.violations)
        super().__init__(f"invalid problem spec {report.spec_name!r}:\n  {lines}")


@dataclass(frozen=True)
class SdpSpec:
    name: str
    kind: UncertaintyKind
    alg: ValueAlgebra
    measure: Measure
    start_step: int
    horizon_max: int
    states: Mapping[int, tuple[str, ...]]
    controls: Mapping[tuple[int, str], tuple[str, ...]]
    next: Mapping[tuple[int, str, str], MStruct]
    reward: Mapping[tuple[int, str, str, str], Any]
    _validation: ValidationReport | None = field(default=None, init=False,
                                                 compare=False, repr=False)

    @property
    def last_step(self) -> int:
        return self.start_step + self.horizon_max

    def states_at(self, t: int) -> tuple[str, ...]:
        try:
            return self.states[t]
        except KeyError:
            raise KeyError(f"no states declared at step {t}") from None

    def controls_at(self, t: int, x: str) -> tuple[str, ...]:
        try:
            return self.controls[(t, x)]
        except KeyError:
            raise KeyError(f"no controls declared at step {t}, state {x!r}") from None

    def next_at(self, t: int, x: str, y: str) -> MStruct:
        try:
            return self.next[(t, x, y)]
        except KeyError:
            raise KeyError(f"no transition declared at step {t}, state {x!r}, "
                           f"control {y!r}") from None

    def reward_at(self, t: int, x: str, y: str, x1: str) -> Any:
        try:
            return self.reward[(t, x, y, x1)]
        except KeyError:
            raise KeyError(f"no reward declared at step {t} for ({x!r}, {y!r}, {x1!r})") from None


def _action_string_shape(spec: SdpSpec) -> bool:
    """True when each step's states extend the previous step's by one character."""
    steps = range(spec.start_step, spec.last_step + 1)
    for t in steps:
        if not all(isinstance(s, str) for s in spec.states.get(t, ())):
            return False
    for t in steps[:-1]:
        cur, nxt = spec.states.get(t, ()), spec.states.get(t + 1, ())
        if not cur or not nxt:
            return False
        lens_cur, lens_nxt = {len(s) for s in cur}, {len(s) for s in nxt}
        if len(lens_cur) != 1 or len(lens_nxt) != 1:
            return False
        if lens_nxt.pop() != lens_cur.pop() + 1:
            return False
    return True


def validate_spec(spec: SdpSpec) -> ValidationReport:
    """Check every well-formedness requirement; violations carry locations."""
    bad: list[str] = []
    t0, last = spec.start_step, spec.last_step

    if spec.measure.kind is not spec.kind:
        bad.append(f"measure {spec.measure.name!r} consumes {spec.measure.kind} "
                   f"structures but the problem kind is {spec.kind}")
    for t in range(t0, last + 1):
        if t not in spec.states:
            bad.append(f"no states declared at step {t}")

    for t in range(t0, last):
        for x in spec.states.get(t, ()):
            ys = spec.controls.get((t, x))
            if ys is None or not ys:
                bad.append(f"notEmptyY at ({t}, {x}): controls missing or empty")
                continue
            for y in ys:
                mx1 = spec.next.get((t, x, y))
                if mx1 is None:
                    bad.append(f"next missing at ({t}, {x}, {y})")
                    continue
                if mx1.kind is not spec.kind:
                    bad.append(f"next at ({t}, {x}, {y}) has kind {mx1.kind}, "
                               f"expected {spec.kind}")
                    continue
                if not m_is_not_empty(mx1):
                    bad.append(f"nextNotEmpty at ({t}, {x}, {y}): empty structure")
                for x1 in mx1.values:
                    if x1 not in spec.states.get(t + 1, ()):
                        bad.append(f"next at ({t}, {x}, {y}): outcome {x1!r} is not "
                                   f"a member of states({t + 1})")
                    if (t, x, y, x1) not in spec.reward:
                        bad.append(f"reward missing at ({t}, {x}, {y}, {x1})")
                if spec.kind is UncertaintyKind.STOCH and m_is_not_empty(mx1):
                    total = weight_sum(mx1)
                    exact = not any(isinstance(w, float) for w in mx1.weights)
                    if (total != 1) if exact else (abs(total - 1) > WEIGHT_SUM_TOLERANCE):
                        bad.append(f"weights at ({t}, {x}, {y}) sum to {total}, not 1")

    if _action_string_shape(spec):
        for t in range(t0, last):
            for x in spec.states[t]:
                offered = set(spec.controls.get((t, x), ()))
                reachable = {s[-1] for s in spec.states[t + 1]
                             if len(s) == len(x) + 1 and s[:-1] == x}
                if offered != reachable:
                    bad.append(f"admissibility closure at ({t}, {x!r}): controls "
                               f"{sorted(offered)} vs reachable {sorted(reachable)}")

    return ValidationReport(spec.name, tuple(bad))


def require_valid(spec: SdpSpec) -> SdpSpec:
    """Validate once, cache the report, raise on violations."""
    report = spec._validation
    if report is None:
        report = validate_spec(spec)
        object.__setattr__(spec, "_validation", report)
    if not report.valid:
        raise SpecError(report)
    return spec


def check_solvable(spec: SdpSpec, t: int, n: int) -> None:
    if n < 0 or t < spec.start_step or t + n > spec.last_step:
        raise ValueError(f"(t={t}, n={n}) outside horizon "
                         f"[{spec.start_step}, {spec.last_step}] of {spec.name!r}")
