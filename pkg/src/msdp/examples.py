"""Built-in problems: emissions climate, operation scheduling, stochastic climate."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import make_algebra
from .measures import make_measure
from .sdp import SdpSpec, require_valid
from .uncertainty import UncertaintyKind, identity, nondet, stoch

CLIMATE_STATES = ("Good", "Bad")
CLIMATE_CONTROLS = ("High", "Low")
CLIMATE_HORIZON = 4

# Reward depends on the control taken and the state reached.
_CLIMATE_REWARD = {("Low", "Good"): 3, ("High", "Good"): 2,
                   ("Low", "Bad"): 1, ("High", "Bad"): 0}


def _climate_next(x: str, y: str) -> tuple[str, ...]:
    if x == "Good" and y == "Low":
        return ("Good",)
    if x == "Bad" and y == "High":
        return ("Bad",)
    return ("Good", "Bad")


def climate_spec(measure_name: str = "min") -> SdpSpec:
    """Two-state emissions world: High yields now, Low keeps the state Good.

    The world stays Good only under Low emissions and stays Bad under High;
    the other two moves may go either way. Integer rewards favour Good
    states and Low controls; `avg` switches the carrier to rational so the
    division is exact.
    """
    carrier = "rational" if measure_name == "avg" else "int"
    alg = make_algebra(carrier)
    measure = make_measure(measure_name, alg)
    states = {t: CLIMATE_STATES for t in range(CLIMATE_HORIZON + 1)}
    controls, nxt, reward = {}, {}, {}
    for t in range(CLIMATE_HORIZON):
        for x in CLIMATE_STATES:
            controls[(t, x)] = CLIMATE_CONTROLS
            for y in CLIMATE_CONTROLS:
                successors = _climate_next(x, y)
                nxt[(t, x, y)] = nondet(successors)
                for x1 in successors:
                    r = _CLIMATE_REWARD[(y, x1)]
                    reward[(t, x, y, x1)] = Fraction(r) if carrier == "rational" else r
    return require_valid(SdpSpec("climate", UncertaintyKind.NONDET, alg, measure,
                                 0, CLIMATE_HORIZON, states, controls, nxt, reward))


# Setup cost of running an operation after another (or first, from "start").
# Chosen so that CABD is the strictly cheapest feasible complete order
# (CABD=5; next best ACBD=CADB=CDAB=9; ABCD=10; ACDB=12).
SCHEDULING_COST = {
    ("start", "A"): 2, ("start", "C"): 1,
    ("A", "B"): 1, ("A", "C"): 3, ("A", "D"): 4,
    ("B", "C"): 3, ("B", "D"): 2,
    ("C", "A"): 1, ("C", "B"): 2, ("C", "D"): 4,
    ("D", "A"): 3, ("D", "B"): 3,
}

_OPS = "ABCD"


def _admissible(seq: str) -> bool:
    if len(set(seq)) != len(seq):
        return False
    for i, op in enumerate(seq):
        if op == "B" and "A" not in seq[:i]:
            return False
        if op == "D" and "C" not in seq[:i]:
            return False
    return True


def scheduling_order_cost(order: str) -> int:
    prev, total = "start", 0
    for op in order:
        total += SCHEDULING_COST[(prev, op)]
        prev = op
    return total


def feasible_orders() -> list[str]:
    """All complete orders respecting B-after-A and D-after-C."""
    return ["".join(p) for p in itertools.permutations(_OPS) if _admissible("".join(p))]


def scheduling_spec() -> SdpSpec:
    """Order four operations, B after A and D after C, minimizing setup cost.

    States are the admissible partial orders as action strings; three
    decision steps suffice because the fourth operation is forced, so its
    cost is folded into the step-2 reward. Rewards are negated costs: the
    maximizing solver then minimizes total cost.
    """
    alg = make_algebra("int")
    measure = make_measure("identity", alg)
    states = {}
    for t in range(4):
        seqs = sorted("".join(p) for p in itertools.permutations(_OPS, t)
                      if _admissible("".join(p)))
        states[t] = tuple(seqs)
    controls, nxt, reward = {}, {}, {}
    for t in range(3):
        for s in states[t]:
            ys = tuple(a for a in _OPS if _admissible(s + a))
            controls[(t, s)] = ys
            for a in ys:
                nxt[(t, s, a)] = identity(s + a)
                prev = s[-1] if s else "start"
                r = -SCHEDULING_COST[(prev, a)]
                if t == 2:
                    forced = next(op for op in _OPS if op not in s + a)
                    r -= SCHEDULING_COST[(a, forced)]
                reward[(t, s, a, s + a)] = r
    return require_valid(SdpSpec("scheduling", UncertaintyKind.IDENTITY, alg, measure,
                                 0, 3, states, controls, nxt, reward))


STAY_WEIGHT = Fraction(4, 5)


def stochastic_climate_spec() -> SdpSpec:
    """Climate transitions with the ambiguous branches made probabilistic.

    Each formerly two-outcome branch keeps the current state with weight 4/5
    and switches with 1/5; the deterministic branches get weight 1. Exact
    rational carrier, expected-value measure.
    """
    alg = make_algebra("rational")
    measure = make_measure("expected", alg)
    states = {t: CLIMATE_STATES for t in range(CLIMATE_HORIZON + 1)}
    controls, nxt, reward = {}, {}, {}
    for t in range(CLIMATE_HORIZON):
        for x in CLIMATE_STATES:
            controls[(t, x)] = CLIMATE_CONTROLS
            for y in CLIMATE_CONTROLS:
                successors = _climate_next(x, y)
                if len(successors) == 1:
                    nxt[(t, x, y)] = stoch([(successors[0], Fraction(1))])
                else:
                    nxt[(t, x, y)] = stoch([(x1, STAY_WEIGHT if x1 == x
                                             else 1 - STAY_WEIGHT)
                                            for x1 in successors])
                for x1 in successors:
                    reward[(t, x, y, x1)] = Fraction(_CLIMATE_REWARD[(y, x1)])
    return require_valid(SdpSpec("stochastic-climate", UncertaintyKind.STOCH, alg,
                                 measure, 0, CLIMATE_HORIZON, states, controls, nxt,
                                 reward))
