"""Command-line front end: solve, verify and trajectories over JSON problem files."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

from .algebra import coerce, make_algebra
from .enumeration import CapExceededError, DEFAULT_BUDGET
from .measures import Measure, make_measure, make_monoid, monoid_fold_measure
from .reports import jsonable
from .sdp import SdpSpec, check_solvable, require_valid
from .solver import DEFAULT_ENUM_CAP, PolicySeq, bi, enumerate_policy_seqs, val
from .trajectories import render_traj, sum_r, trj, val_prime
from .uncertainty import UncertaintyKind, identity, nondet, stoch
from .verify import run_verification

SCHEMA_VERSION = 1


class ProblemFileError(ValueError):
    """Malformed problem or policy file; the message carries a JSON pointer."""


def fmt_value(v: Any) -> str:
    """Text rendering: integers verbatim, rationals p/q, floats to 9 digits."""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)


# --------------------------------------------------------------------------
# Problem files


def _expect(obj: Any, typ, ptr: str):
    if not isinstance(obj, typ):
        want = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise ProblemFileError(f"expected {want} at {ptr}, got {type(obj).__name__}")
    return obj


def _field(mapping: dict, key: str, ptr: str, default=None, required: bool = False):
    if key not in mapping:
        if required:
            raise ProblemFileError(f"missing key {key!r} at {ptr}")
        return default
    return mapping[key]


def _parse_weight(raw: Any, carrier: str, ptr: str):
    if not isinstance(raw, (int, str)):
        raise ProblemFileError(f"expected a number or numeric string at {ptr}")
    try:
        exact = Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFileError(f"bad weight at {ptr}: {exc}") from None
    return float(exact) if carrier == "float" else exact


def _parse_value(raw: Any, carrier: str, ptr: str):
    if not isinstance(raw, (int, str)):
        raise ProblemFileError(f"expected a number or numeric string at {ptr}")
    try:
        return coerce(carrier, raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFileError(f"bad value at {ptr}: {exc}") from None


def _parse_next(raw: Any, kind: UncertaintyKind, carrier: str, ptr: str):
    if kind is UncertaintyKind.IDENTITY:
        return identity(_expect(raw, str, ptr))
    if kind is UncertaintyKind.NONDET:
        return nondet([_expect(s, str, f"{ptr}/{i}")
                       for i, s in enumerate(_expect(raw, list, ptr))])
    pairs = []
    for i, entry in enumerate(_expect(raw, list, ptr)):
        entry = _expect(entry, list, f"{ptr}/{i}")
        if len(entry) != 2:
            raise ProblemFileError(f"expected [outcome, weight] at {ptr}/{i}")
        outcome = _expect(entry[0], str, f"{ptr}/{i}/0")
        pairs.append((outcome, _parse_weight(entry[1], carrier, f"{ptr}/{i}/1")))
    try:
        return stoch(pairs)
    except ValueError as exc:
        raise ProblemFileError(f"bad distribution at {ptr}: {exc}") from None


def _parse_measure(raw: Any, alg, ptr: str) -> Measure:
    if isinstance(raw, str):
        return make_measure(raw, alg)
    spec = _expect(raw, dict, ptr)
    fold = _expect(_field(spec, "monoid_fold", ptr, required=True), dict,
                   f"{ptr}/monoid_fold")
    odot = _expect(_field(fold, "odot", f"{ptr}/monoid_fold", required=True), str,
                   f"{ptr}/monoid_fold/odot")
    neutr = _parse_value(_field(fold, "neutr", f"{ptr}/monoid_fold", required=True),
                         alg.carrier, f"{ptr}/monoid_fold/neutr")
    return monoid_fold_measure(make_monoid(odot, neutr))


def parse_problem_dict(doc: dict) -> SdpSpec:
    _expect(doc, dict, "/")
    version = _field(doc, "schema_version", "/", required=True)
    if version != SCHEMA_VERSION:
        raise ProblemFileError(f"unsupported schema_version {version!r} at /schema_version")
    name = _expect(_field(doc, "name", "/", required=True), str, "/name")
    kind = UncertaintyKind.from_name(
        _expect(_field(doc, "uncertainty", "/", required=True), str, "/uncertainty"))

    value = _expect(_field(doc, "value", "/", required=True), dict, "/value")
    carrier = _expect(_field(value, "carrier", "/value", required=True), str,
                      "/value/carrier")
    plus = _expect(_field(value, "plus", "/value", default="add"), str, "/value/plus")
    zero = _parse_value(_field(value, "zero", "/value", default=0), carrier, "/value/zero")
    tol = _field(value, "eq_tolerance", "/value")
    alg = make_algebra(carrier, plus, zero,
                       float(tol) if tol is not None else None)

    measure = _parse_measure(_field(doc, "measure", "/", required=True), alg, "/measure")
    start_step = _expect(_field(doc, "start_step", "/", default=0), int, "/start_step")
    horizon = _expect(_field(doc, "horizon", "/", required=True), int, "/horizon")
    steps = _expect(_field(doc, "steps", "/", required=True), list, "/steps")
    if len(steps) != horizon + 1:
        raise ProblemFileError(f"expected {horizon + 1} entries at /steps "
                               f"(horizon plus terminal step), got {len(steps)}")

    states, controls, nxt, reward = {}, {}, {}, {}
    for i, step in enumerate(steps):
        t = start_step + i
        ptr = f"/steps/{i}"
        step = _expect(step, dict, ptr)
        states[t] = tuple(_expect(s, str, f"{ptr}/states/{j}")
                          for j, s in enumerate(
                              _expect(_field(step, "states", ptr, required=True),
                                      list, f"{ptr}/states")))
        if i == horizon:
            continue
        ctrl_map = _expect(_field(step, "controls", ptr, required=True), dict,
                           f"{ptr}/controls")
        next_map = _expect(_field(step, "next", ptr, required=True), dict, f"{ptr}/next")
        reward_map = _expect(_field(step, "reward", ptr, required=True), dict,
                             f"{ptr}/reward")
        for x, ys in ctrl_map.items():
            controls[(t, x)] = tuple(_expect(y, str, f"{ptr}/controls/{x}/{j}")
                                     for j, y in enumerate(
                                         _expect(ys, list, f"{ptr}/controls/{x}")))
        for x, by_ctrl in _expect(next_map, dict, f"{ptr}/next").items():
            for y, form in _expect(by_ctrl, dict, f"{ptr}/next/{x}").items():
                nxt[(t, x, y)] = _parse_next(form, kind, carrier, f"{ptr}/next/{x}/{y}")
        for x, by_ctrl in _expect(reward_map, dict, f"{ptr}/reward").items():
            for y, by_nxt in _expect(by_ctrl, dict, f"{ptr}/reward/{x}").items():
                for x1, raw in _expect(by_nxt, dict, f"{ptr}/reward/{x}/{y}").items():
                    reward[(t, x, y, x1)] = _parse_value(raw, carrier,
                                                         f"{ptr}/reward/{x}/{y}/{x1}")

    spec = SdpSpec(name, kind, alg, measure, start_step, horizon,
                   states, controls, nxt, reward)
    return require_valid(spec)


def parse_problem_file(path: str) -> SdpSpec:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"{path}: invalid JSON: {exc}") from None
    return parse_problem_dict(doc)


def spec_to_problem_dict(spec: SdpSpec) -> dict:
    """Serialize back to the problem-file form; parse_problem_dict inverts this."""
    if spec.measure.monoid is not None:
        measure = {"monoid_fold": {"odot": spec.measure.monoid.odot_name,
                                   "neutr": jsonable(spec.measure.monoid.neutr)}}
    else:
        measure = spec.measure.name
    value = {"carrier": spec.alg.carrier, "plus": spec.alg.plus_name,
             "zero": jsonable(spec.alg.zero)}
    if spec.alg.carrier == "float" and spec.alg.eq_tolerance != 1e-9:
        value["eq_tolerance"] = spec.alg.eq_tolerance

    def next_form(ms):
        if spec.kind is UncertaintyKind.IDENTITY:
            return ms.values[0]
        if spec.kind is UncertaintyKind.NONDET:
            return list(ms.values)
        return [[v, jsonable(w)] for v, w in zip(ms.values, ms.weights)]

    steps = []
    for t in range(spec.start_step, spec.last_step + 1):
        entry: dict[str, Any] = {"states": list(spec.states_at(t))}
        if t < spec.last_step:
            entry["controls"] = {x: list(spec.controls_at(t, x))
                                 for x in spec.states_at(t)}
            entry["next"] = {x: {y: next_form(spec.next_at(t, x, y))
                                 for y in spec.controls_at(t, x)}
                             for x in spec.states_at(t)}
            entry["reward"] = {x: {y: {x1: jsonable(spec.reward_at(t, x, y, x1))
                                       for x1 in spec.next_at(t, x, y).values}
                                   for y in spec.controls_at(t, x)}
                               for x in spec.states_at(t)}
        steps.append(entry)
    return {"schema_version": SCHEMA_VERSION, "name": spec.name,
            "uncertainty": spec.kind.value, "value": value, "measure": measure,
            "start_step": spec.start_step, "horizon": spec.horizon_max, "steps": steps}


def parse_policy_file(path: str, spec: SdpSpec, t: int) -> PolicySeq:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProblemFileError(f"{path}: invalid JSON: {exc}") from None
    _expect(doc, dict, "/")
    start = _expect(_field(doc, "start_step", "/", default=t), int, "/start_step")
    raw = _expect(_field(doc, "policies", "/", required=True), list, "/policies")
    choices = []
    for i, p in enumerate(raw):
        step = start + i
        choice = dict(_expect(p, dict, f"/policies/{i}"))
        for x in spec.states_at(step):
            if x not in choice:
                raise ProblemFileError(f"missing state {x!r} at /policies/{i}")
            if choice[x] not in spec.controls_at(step, x):
                raise ProblemFileError(f"control {choice[x]!r} not admissible for "
                                       f"{x!r} at /policies/{i}")
        choices.append(choice)
    return PolicySeq.from_choices(start, choices)


# --------------------------------------------------------------------------
# Commands


def _dump_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _resolve_window(spec: SdpSpec, args) -> tuple[int, int]:
    t = spec.start_step if args.step is None else args.step
    n = (spec.last_step - t) if args.horizon is None else args.horizon
    check_solvable(spec, t, n)
    return t, n


def render_policy_seq(ps: PolicySeq) -> str:
    if not ps.policies:
        return "(empty)"
    return "; ".join("{" + ", ".join(f"{x}: {y}" for x, y in p.choice.items()) + "}"
                     for p in ps.policies)


def cmd_solve(args) -> int:
    spec = parse_problem_file(args.file)
    t, n = _resolve_window(spec, args)
    ps = bi(spec, t, n)
    want_val = args.value_fn in ("val", "both")
    want_prime = args.value_fn in ("val-prime", "both")
    values: dict[str, dict[str, Any]] = {}
    if want_val:
        values["val"] = {x: val(spec, ps, x) for x in spec.states_at(t)}
    if want_prime:
        values["val_prime"] = {x: val_prime(spec, ps, x) for x in spec.states_at(t)}

    if args.format == "json":
        _dump_json({"schema_version": SCHEMA_VERSION, "command": "solve",
                    "problem": spec.name, "step": t, "horizon": n,
                    "policies": [dict(p.choice) for p in ps.policies],
                    "values": jsonable(values)})
        return 0
    print(f"problem: {spec.name}")
    print(f"kind: {spec.kind}  measure: {spec.measure.name}  carrier: {spec.alg.carrier}")
    print(f"backward induction from step {t}, horizon {n}:")
    for p in ps.policies:
        row = ", ".join(f"{x} -> {p.choice[x]}" for x in spec.states_at(p.step))
        print(f"  step {p.step}: {row}")
    for fn_name, table in values.items():
        for x in spec.states_at(t):
            print(f"{fn_name}({x}) = {fmt_value(table[x])}")
    return 0


def cmd_verify(args) -> int:
    spec = parse_problem_file(args.file)
    t, n = _resolve_window(spec, args)
    report = run_verification(spec, t, n, budget=args.budget, seed=args.seed)
    if args.format == "json":
        _dump_json(report.to_jsonable())
    else:
        print(f"problem: {spec.name}  measure: {spec.measure.name}  "
              f"budget: {report.budget}  seed: {report.seed}")
        for e in report.entries:
            status = "SKIP" if e.skipped else ("PASS" if e.passed else "FAIL")
            extra = f" ({e.cases} cases, {e.mode})" if not e.skipped else f" ({e.reason})"
            print(f"  {status} {e.name}{extra}")
            if e.passed is False and e.detail:
                detail = ", ".join(f"{k}={v}" for k, v in jsonable(e.detail).items())
                print(f"       counter-example: {detail}")
        print("verdict: backward induction "
              + ("certified at desk scale" if report.verdict else "NOT certified"))
        if report.harness_defect:
            print("warning: conditions passed but val and val' disagree; "
                  "this harness has a defect")
    return 0 if report.verdict and not report.failures else 1


def cmd_trajectories(args) -> int:
    spec = parse_problem_file(args.file)
    t, n = _resolve_window(spec, args)
    x = args.state
    if x not in spec.states_at(t):
        raise ProblemFileError(f"unknown start state {x!r} at step {t}")
    if args.policy == "optimal":
        seqs = [bi(spec, t, n)]
    elif args.policy == "all":
        seqs = list(enumerate_policy_seqs(spec, t, n, cap=args.cap))
    else:
        seqs = [parse_policy_file(args.policy, spec, t)]

    for i, ps in enumerate(seqs):
        if len(seqs) > 1:
            print(f"policy {i}: {render_policy_seq(ps)}")
        mtr = trj(spec, ps, x)
        weights = mtr.weights if mtr.weights is not None else [None] * len(mtr.values)
        for tr, w in zip(mtr.values, weights):
            line = f"{render_traj(tr)}  sum = {fmt_value(sum_r(spec, tr))}"
            if w is not None:
                line += f"  weight = {fmt_value(w)}"
            print(line)
        print(f"{spec.measure.name} total = {fmt_value(val_prime(spec, ps, x))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msdp",
        description="Solve and verify finite-horizon monadic sequential decision problems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument("--step", type=int, default=None,
                       help="first decision step (default: problem start)")
        p.add_argument("--horizon", type=int, default=None,
                       help="number of decision steps (default: rest of the horizon)")

    p_solve = sub.add_parser("solve", help="run backward induction")
    common(p_solve)
    p_solve.add_argument("--value-fn", choices=("val", "val-prime", "both"),
                         default="val")
    p_solve.add_argument("--format", choices=("text", "json"), default="text")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="run every law, condition and oracle check")
    common(p_verify)
    p_verify.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                          help="max cases per law check before sampling kicks in")
    p_verify.add_argument("--seed", type=int,
                          default=int(os.environ.get("SDP_SEED", "0")),
                          help="sampling seed (default: $SDP_SEED or 0)")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_traj = sub.add_parser("trajectories", help="list trajectories and reward sums")
    common(p_traj)
    p_traj.add_argument("--state", required=True, help="start state")
    p_traj.add_argument("--policy", default="optimal",
                        help="'optimal', 'all', or a policy file path")
    p_traj.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP,
                        help="enumeration cap for --policy all")
    p_traj.set_defaults(func=cmd_trajectories)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
