"""Sequencing four machine jobs with order-dependent setup costs.

Run with: python3 demos/scheduling_walkthrough.py
"""

from msdp import bi, feasible_orders, scheduling_order_cost, scheduling_spec, val


def main():
    print("Four jobs A, B, C, D; switching from one job to the next has a")
    print("setup cost that depends on the pair. Precedence rules leave six")
    print("feasible complete orders:")
    print()
    for order in sorted(feasible_orders(), key=scheduling_order_cost):
        print(f"  {order}  total setup {scheduling_order_cost(order)}")
    print()

    spec = scheduling_spec()
    ps = bi(spec, 0, 3)
    print("Backward induction works on partial plans (the state is the string")
    print("of jobs already scheduled) and rewards are negated costs:")
    print()
    plan = ""
    for policy in ps.policies:
        choice = policy.choice[plan]
        print(f"  at {plan!r:6} choose {choice}   "
              f"(policy for step {policy.step}: {policy.choice})")
        plan += choice
    print()
    print(f"The plan commits to {plan}, the forced last job makes it {plan}D,")
    print(f"and val('') = {val(spec, ps, '')} recovers the cost-5 optimum")
    print("with its sign flipped.")


if __name__ == "__main__":
    main()
