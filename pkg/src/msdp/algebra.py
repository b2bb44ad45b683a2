"""Value carriers: the reward type with its combination and total preorder."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .enumeration import DEFAULT_BUDGET, Finite, Product
from .reports import LawReport, run_law

CARRIERS = ("int", "rational", "float")

_PLUS_OPS = {"add": operator.add, "mul": operator.mul}


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class ValueAlgebra:
    """Reward values with a combination op and a total preorder.

    `zero` is the value of the empty policy sequence; it need not be neutral
    for `plus`. `eq_tolerance` applies to equality checks only, never to
    `leq` or argmax comparisons.
    """

    carrier: str
    plus_name: str
    zero: Any
    eq_tolerance: float
    plus: Callable[[Any, Any], Any] = field(compare=False)
    leq: Callable[[Any, Any], bool] = field(compare=False)


def coerce(carrier: str, x: Any) -> Any:
    """Bring a parsed number (int, Fraction, decimal/ratio string, float) into the carrier."""
    if carrier == "int":
        as_frac = Fraction(x) if not isinstance(x, float) else Fraction(str(x))
        if as_frac.denominator != 1:
            raise AlgebraError(f"{x!r} is not an integer")
        return int(as_frac)
    if carrier == "rational":
        if isinstance(x, float):
            raise AlgebraError(f"rational carrier needs exact input, got float {x!r}"
                               " (write it as a string)")
        return Fraction(x)
    if carrier == "float":
        return float(Fraction(x)) if isinstance(x, str) else float(x)
    raise AlgebraError(f"unknown carrier {carrier!r}")


def make_algebra(carrier: str, plus: str | Callable = "add", zero: Any = 0,
                 eq_tolerance: float | None = None,
                 leq: Callable[[Any, Any], bool] | None = None) -> ValueAlgebra:
    if carrier not in CARRIERS:
        raise AlgebraError(f"unknown carrier {carrier!r}, expected one of {CARRIERS}")
    if callable(plus):
        plus_name, plus_fn = getattr(plus, "__name__", "custom"), plus
    else:
        if plus not in _PLUS_OPS:
            raise AlgebraError(f"unknown plus operation {plus!r}")
        plus_name, plus_fn = plus, _PLUS_OPS[plus]
    if eq_tolerance is None:
        eq_tolerance = 1e-9 if carrier == "float" else 0.0
    if carrier != "float" and eq_tolerance != 0.0:
        raise AlgebraError("exact carriers use eq_tolerance 0")
    return ValueAlgebra(carrier, plus_name, coerce(carrier, zero), eq_tolerance,
                        plus_fn, leq if leq is not None else operator.le)


def values_equal(alg: ValueAlgebra, a: Any, b: Any) -> bool:
    if alg.eq_tolerance:
        return abs(a - b) <= alg.eq_tolerance
    return a == b


def check_total_preorder(alg: ValueAlgebra, samples: Sequence[Any],
                         budget: int = DEFAULT_BUDGET, seed: int = 0) -> LawReport:
    """Reflexivity, transitivity and totality of leq over the samples."""
    if not samples:
        raise AlgebraError("need at least one sample")
    pts = Finite(tuple(samples))
    leq = alg.leq

    def reflexive(a):
        return None if leq(a, a) else {"a": a}

    def transitive(case):
        a, b, c = case
        if leq(a, b) and leq(b, c) and not leq(a, c):
            return {"a": a, "b": b, "c": c}
        return None

    def total(case):
        a, b = case
        return None if leq(a, b) or leq(b, a) else {"a": a, "b": b}

    checks = (
        run_law("leqReflexive", pts, reflexive, budget, seed),
        run_law("leqTransitive", Product(pts, pts, pts), transitive, budget, seed),
        run_law("leqTotal", Product(pts, pts), total, budget, seed),
    )
    return LawReport(f"total-preorder[{alg.carrier}]", checks, budget, seed)


def check_plus_mon(alg: ValueAlgebra, samples: Sequence[Any],
                   budget: int = DEFAULT_BUDGET, seed: int = 0) -> LawReport:
    """plusMonSpec: v1 leq v2 and v3 leq v4 imply v1+v3 leq v2+v4, over sample 4-tuples."""
    if not samples:
        raise AlgebraError("need at least one sample")
    pts = Finite(tuple(samples))

    def mono(case):
        v1, v2, v3, v4 = case
        if alg.leq(v1, v2) and alg.leq(v3, v4):
            if not alg.leq(alg.plus(v1, v3), alg.plus(v2, v4)):
                return {"v1": v1, "v2": v2, "v3": v3, "v4": v4,
                        "lhs": alg.plus(v1, v3), "rhs": alg.plus(v2, v4)}
        return None

    checks = (run_law("plusMonSpec", Product(pts, pts, pts, pts), mono, budget, seed),)
    return LawReport(f"plus-monotone[{alg.carrier},{alg.plus_name}]", checks, budget, seed)
