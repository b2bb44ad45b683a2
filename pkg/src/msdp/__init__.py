"""Finite-horizon sequential decision problems over an uncertainty monad.

Backward induction computes policy sequences that are provably optimal
whenever the measure satisfies four algebra conditions; the verify module
checks those conditions, the monad laws and the optimality claim itself on
concrete desk-scale problems.
"""

from .algebra import (
    AlgebraError,
    ValueAlgebra,
    check_plus_mon,
    check_total_preorder,
    coerce,
    make_algebra,
    values_equal,
)
from .enumeration import (
    DEFAULT_BUDGET,
    CapExceededError,
    Finite,
    Mapped,
    Product,
    Space,
    Union,
    iter_cases,
    sequences,
)
from .examples import (
    climate_spec,
    feasible_orders,
    scheduling_order_cost,
    scheduling_spec,
    stochastic_climate_spec,
)
from .measures import (
    CONDITIONS,
    MEASURE_NAMES,
    Measure,
    MeasureError,
    MonoidSpec,
    PreconditionError,
    check_meas_join,
    check_meas_mon,
    check_meas_plus,
    check_meas_pure,
    check_monoid_preconditions,
    make_measure,
    make_monoid,
    measure_check_suite,
    monoid_fold_measure,
)
from .reports import LawCheck, LawReport, OracleReport, ValidationReport, jsonable
from .sdp import SdpSpec, SpecError, check_solvable, require_valid, validate_spec
from .solver import (
    DEFAULT_ENUM_CAP,
    Policy,
    PolicySeq,
    bi,
    check_bellman,
    check_optimality,
    count_policy_seqs,
    cval,
    enumerate_policy_seqs,
    opt_ext,
    val,
)
from .trajectories import (
    StateCtrlSeq,
    check_trj_not_empty,
    check_val_equivalence,
    render_traj,
    sum_r,
    trj,
    val_prime,
)
from .uncertainty import (
    MStruct,
    StructureError,
    StructureGenerator,
    UncertaintyKind,
    check_monad_laws,
    check_nonempty_preservation,
    dyadic_weight_vectors,
    identity,
    m_bind,
    m_equal,
    m_is_not_empty,
    m_join,
    m_map,
    m_pure,
    m_render,
    nondet,
    stoch,
)
from .verify import VERDICT_CHECKS, CheckEntry, VerificationReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CONDITIONS",
    "CapExceededError",
    "CheckEntry",
    "DEFAULT_BUDGET",
    "DEFAULT_ENUM_CAP",
    "Finite",
    "LawCheck",
    "LawReport",
    "MEASURE_NAMES",
    "MStruct",
    "Mapped",
    "Measure",
    "MeasureError",
    "MonoidSpec",
    "OracleReport",
    "Policy",
    "PolicySeq",
    "PreconditionError",
    "Product",
    "SdpSpec",
    "Space",
    "SpecError",
    "StateCtrlSeq",
    "StructureError",
    "StructureGenerator",
    "UncertaintyKind",
    "Union",
    "VERDICT_CHECKS",
    "ValidationReport",
    "ValueAlgebra",
    "VerificationReport",
    "bi",
    "check_bellman",
    "check_meas_join",
    "check_meas_mon",
    "check_meas_plus",
    "check_meas_pure",
    "check_monad_laws",
    "check_monoid_preconditions",
    "check_nonempty_preservation",
    "check_optimality",
    "check_plus_mon",
    "check_solvable",
    "check_total_preorder",
    "check_trj_not_empty",
    "check_val_equivalence",
    "climate_spec",
    "coerce",
    "count_policy_seqs",
    "cval",
    "dyadic_weight_vectors",
    "enumerate_policy_seqs",
    "feasible_orders",
    "identity",
    "iter_cases",
    "jsonable",
    "m_bind",
    "m_equal",
    "m_is_not_empty",
    "m_join",
    "m_map",
    "m_pure",
    "m_render",
    "make_algebra",
    "make_measure",
    "make_monoid",
    "measure_check_suite",
    "monoid_fold_measure",
    "nondet",
    "opt_ext",
    "render_traj",
    "require_valid",
    "run_verification",
    "scheduling_order_cost",
    "scheduling_spec",
    "sequences",
    "stochastic_climate_spec",
    "stoch",
    "sum_r",
    "trj",
    "val",
    "val_prime",
    "validate_spec",
    "values_equal",
]
