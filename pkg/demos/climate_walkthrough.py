"""A two-state emissions world, and why the measure has to earn its keep.

Run with: python3 demos/climate_walkthrough.py
"""

from msdp import (
    PolicySeq,
    bi,
    check_optimality,
    climate_spec,
    measure_check_suite,
    render_traj,
    run_verification,
    sum_r,
    trj,
    val,
    val_prime,
)

HIGH_LOW_HIGH = [
    {"Good": "High", "Bad": "High"},
    {"Good": "Low", "Bad": "Low"},
    {"Good": "High", "Bad": "High"},
]


def main():
    spec = climate_spec("sum")
    ps = PolicySeq.from_choices(0, HIGH_LOW_HIGH)

    print("The world is Good or Bad; each step we emit High or Low.")
    print("Low emissions in a Good world pay 3, High in a Bad world pays 0.")
    print()
    print("Fix the policy sequence [High, Low, High] and start in Good.")
    print("The possible futures and their total rewards:")
    print()
    for tr in trj(spec, ps, "Good").values:
        print(f"  {render_traj(tr)}   total {sum_r(spec, tr)}")
    print()

    v, vp = val(spec, ps, "Good"), val_prime(spec, ps, "Good")
    print(f"Backward induction's value function says val = {v}.")
    print(f"Summing over whole trajectories says val' = {vp}.")
    print()
    print("They disagree because 'sum' adds the current reward once per")
    print("branch on one route and once in total on the other. That is")
    print("exactly the measPlusSpec condition, and sum does not satisfy it:")
    print()
    suite = measure_check_suite(spec.measure, spec.alg)
    for law, check in suite.items():
        mark = "ok " if check.passed else "VIOLATED"
        print(f"  {law:14} {mark}")
    print()

    opt = bi(spec, 0, 3)
    against_prime = check_optimality(spec, opt, "val_prime")
    print("So bi still maximizes its own val, but a brute-force sweep finds a")
    print(f"policy sequence with a better trajectory total: "
          f"{against_prime.witness['value']} > "
          f"{against_prime.witness['claimed_optimal_value']}.")
    print()

    print("With the 'min' measure (maximize the worst case) every condition")
    print("holds and the whole pipeline certifies:")
    print()
    spec_min = climate_spec("min")
    report = run_verification(spec_min, 0, 3)
    for entry in report.entries:
        if entry.name.startswith(("meas", "optimality", "valEquivalence")):
            status = "skip" if entry.skipped else ("ok  " if entry.passed else "FAIL")
            print(f"  {status} {entry.name}")
    print()
    opt_min = bi(spec_min, 0, 3)
    print(f"Optimal worst-case policy: always Low; guarantees "
          f"{val(spec_min, opt_min, 'Good')} from Good and "
          f"{val(spec_min, opt_min, 'Bad')} from Bad over three steps.")


if __name__ == "__main__":
    main()
