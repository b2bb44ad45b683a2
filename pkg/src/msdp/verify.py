"""One-shot verification harness: every law, condition and oracle for a problem.

All checks always run (no short-circuiting) so a report shows the whole
failure pattern; a condition failure typically co-occurs with a val/val'
discrepancy, and that co-occurrence is the point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import check_plus_mon, check_total_preorder
from .enumeration import CapExceededError, DEFAULT_BUDGET
from .measures import CONDITIONS, default_value_grid, measure_check_suite
from .reports import LawCheck, LawReport, OracleReport, jsonable
from .sdp import SdpSpec, require_valid
from .solver import bi, check_bellman, check_optimality
from .trajectories import check_trj_not_empty, check_val_equivalence
from .uncertainty import StructureGenerator, check_monad_laws, check_nonempty_preservation

VERDICT_CHECKS = CONDITIONS + ("optimality.val", "optimality.val_prime")


@dataclass(frozen=True)
class CheckEntry:
    name: str
    category: str  # "law" or "oracle"
    passed: bool | None  # None when skipped
    cases: int = 0
    mode: str | None = None
    detail: dict | None = None
    reason: str | None = None

    @property
    def skipped(self) -> bool:
        return self.passed is None


@dataclass(frozen=True)
class VerificationReport:
    spec_name: str
    t: int
    n: int
    budget: int
    seed: int
    entries: tuple[CheckEntry, ...]

    def entry(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def verdict(self) -> bool:
        """Certified iff the four conditions and both optimality oracles pass."""
        return all(self.entry(name).passed for name in VERDICT_CHECKS)

    @property
    def failures(self) -> tuple[CheckEntry, ...]:
        return tuple(e for e in self.entries if e.passed is False)

    @property
    def harness_defect(self) -> bool:
        """Conditions all pass yet val and val_prime disagree: impossible if
        both the theorem and this harness are right."""
        conditions_ok = all(self.entry(name).passed for name in CONDITIONS)
        return conditions_ok and self.entry("valEquivalence").passed is False

    def to_jsonable(self) -> dict:
        return {
            "spec": self.spec_name,
            "t": self.t,
            "n": self.n,
            "budget": self.budget,
            "seed": self.seed,
            "verdict": "certified" if self.verdict else "not-certified",
            "harness_defect": self.harness_defect,
            "checks": [
                {"name": e.name, "category": e.category,
                 "status": "skipped" if e.skipped else ("pass" if e.passed else "fail"),
                 "cases": e.cases, "mode": e.mode, "detail": jsonable(e.detail),
                 "reason": e.reason}
                for e in self.entries
            ],
        }


def _law_entries(prefix: str, report: LawReport) -> list[CheckEntry]:
    return [CheckEntry(f"{prefix}{c.law}", "law", c.passed, c.cases, c.mode,
                       c.counterexample)
            for c in report.checks]


def _law_entry(name: str, check: LawCheck) -> CheckEntry:
    return CheckEntry(name, "law", check.passed, check.cases, check.mode,
                      check.counterexample)


def _oracle_entry(name: str, report: OracleReport) -> CheckEntry:
    return CheckEntry(name, "oracle", None if report.skipped else report.passed,
                      report.cases, "exhaustive", report.witness, report.reason)


def _skipped(name: str, category: str, reason: str) -> CheckEntry:
    return CheckEntry(name, category, None, reason=reason)


def run_verification(spec: SdpSpec, t: int | None = None, n: int | None = None,
                     budget: int = DEFAULT_BUDGET, seed: int = 0) -> VerificationReport:
    require_valid(spec)
    if t is None:
        t = spec.start_step
    if n is None:
        n = spec.start_step + spec.horizon_max - t
    entries: list[CheckEntry] = []

    gen = StructureGenerator(spec.kind, seed=seed)
    entries += _law_entries("monadLaws.", check_monad_laws(spec.kind, gen, budget))
    entries += _law_entries("nonEmpty.", check_nonempty_preservation(spec.kind, gen, budget))

    samples = tuple(default_value_grid(spec.alg))
    entries += _law_entries("preorder.", check_total_preorder(spec.alg, samples,
                                                              budget, seed))
    entries.append(_law_entry("plusMonSpec",
                              check_plus_mon(spec.alg, samples, budget, seed).checks[0]))

    suite = measure_check_suite(spec.measure, spec.alg, budget, seed)
    for condition in CONDITIONS:
        entries.append(_law_entry(condition, suite[condition]))

    def oracle(name, fn, *args, **kwargs):
        try:
            entries.append(_oracle_entry(name, fn(*args, **kwargs)))
        except CapExceededError as exc:
            entries.append(_skipped(name, "oracle", str(exc)))

    oracle("trjNotEmpty", check_trj_not_empty, spec, t, n)
    oracle("valEquivalence", check_val_equivalence, spec, t, n)
    opt = bi(spec, t, n)
    oracle("optimality.val", check_optimality, spec, opt, "val")
    oracle("optimality.val_prime", check_optimality, spec, opt, "val_prime")
    if t + 1 + max(n - 1, 0) <= spec.last_step:
        oracle("bellman", check_bellman, spec, t, max(n - 1, 0))
    else:
        entries.append(_skipped("bellman", "oracle",
                                "horizon too short for a step-(t+1) tail"))

    return VerificationReport(spec.name, t, n, budget, seed, tuple(entries))
