"""Report types shared by the law checkers and brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .enumeration import Space, iter_cases


def jsonable(x: Any) -> Any:
    """Recursively convert report payloads to JSON-safe values.

    Fractions become "p/q" strings (plain integers when the denominator is 1)
    so exact values survive serialization unchanged.
    """
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


@dataclass(frozen=True)
class LawCheck:
    """Outcome of one law over one generated case space."""

    law: str
    passed: bool
    cases: int
    mode: str  # "exhaustive" or "sampled"
    counterexample: dict[str, Any] | None = None


@dataclass(frozen=True)
class LawReport:
    subject: str
    checks: tuple[LawCheck, ...]
    budget: int
    seed: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, law: str) -> LawCheck:
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)

    def failures(self) -> tuple[LawCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


@dataclass(frozen=True)
class OracleReport:
    """Outcome of a brute-force sweep (optimality, Bellman, equivalence)."""

    name: str
    passed: bool
    cases: int
    witness: dict[str, Any] | None = None
    skipped: bool = False
    reason: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    spec_name: str
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations


def run_law(law: str, space: Space, violation: Callable[[Any], dict[str, Any] | None],
            budget: int, seed: int) -> LawCheck:
    """Scan a case space for the first violation of one law.

    `violation` returns None for a passing case, else a counter-example
    payload. The scan stops at the first failure; `cases` counts the cases
    examined.
    """
    mode, cases = iter_cases(space, budget, seed)
    count = 0
    for idx, case in cases:
        count += 1
        ce = violation(case)
        if ce is not None:
            return LawCheck(law, False, count, mode, {"index": idx, **ce})
    return LawCheck(law, True, count, mode)
