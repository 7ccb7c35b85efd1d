"""Discrete preference games on heterogeneous social networks.

Exact-arithmetic game primitives, bisection machinery with a constructive
subversion search, best-response dynamics, a small-scale brute-force oracle,
and a 2P2N-3SAT hardness-instance generator, plus a CLI front end.
"""

from .bisection import (
    Bisection,
    Classification,
    UPair,
    apply_u_pair,
    build_u_pair,
    is_k_minimal,
    local_search_k_minimal,
)
from .dynamics import (
    HighestGain,
    LowestId,
    MoveRow,
    MoveTrace,
    PreferFlipToOne,
    RandomSeeded,
    ScheduleReport,
    Scripted,
    check_all_schedules_subvert,
    default_max_steps,
    run_to_equilibrium,
    verify_swing,
)
from .errors import (
    AlgorithmInvariantViolated,
    AllStubborn,
    BudgetExceeded,
    EvenN,
    InvalidK,
    InvalidParams,
    InvalidScript,
    InvalidStubbornness,
    NoPairExists,
    Not2P2N,
    Not3SAT,
    NotGood,
    NotMajorityZero,
    PrefGameError,
    ReductionMismatch,
    TooLarge,
)
from .game_core import (
    Graph,
    Rational,
    StubbornnessProfile,
    as_bits,
    cost,
    flip,
    improving_flip,
    integer_stubbornness,
    is_equilibrium,
    is_stubborn,
    majority,
)
from .hardness_gen import (
    Formula2P2N,
    ReductionInstance,
    build_reduction,
    format_2p2n_3sat,
    guided_subversion_run,
    max_N,
    parse_2p2n_3sat,
    proper_assignment,
)
from .oracle import (
    characterization_check,
    exists_subvertable_assignment,
    is_subvertable_assignment,
)
from .subversion import (
    RETURN_SITES,
    SubversionResult,
    belief_from_good_bisection,
    compute_good_bisection,
    find_subversion,
    min_rank_in_not_s,
    min_rank_in_s,
)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmInvariantViolated",
    "AllStubborn",
    "Bisection",
    "BudgetExceeded",
    "Classification",
    "EvenN",
    "Formula2P2N",
    "Graph",
    "HighestGain",
    "InvalidK",
    "InvalidParams",
    "InvalidScript",
    "InvalidStubbornness",
    "LowestId",
    "MoveRow",
    "MoveTrace",
    "NoPairExists",
    "Not2P2N",
    "Not3SAT",
    "NotGood",
    "NotMajorityZero",
    "PrefGameError",
    "PreferFlipToOne",
    "RETURN_SITES",
    "RandomSeeded",
    "Rational",
    "ReductionInstance",
    "ReductionMismatch",
    "ScheduleReport",
    "Scripted",
    "StubbornnessProfile",
    "SubversionResult",
    "TooLarge",
    "UPair",
    "apply_u_pair",
    "as_bits",
    "belief_from_good_bisection",
    "build_reduction",
    "build_u_pair",
    "characterization_check",
    "check_all_schedules_subvert",
    "compute_good_bisection",
    "cost",
    "default_max_steps",
    "exists_subvertable_assignment",
    "find_subversion",
    "flip",
    "format_2p2n_3sat",
    "guided_subversion_run",
    "improving_flip",
    "integer_stubbornness",
    "is_equilibrium",
    "is_k_minimal",
    "is_stubborn",
    "is_subvertable_assignment",
    "local_search_k_minimal",
    "majority",
    "max_N",
    "min_rank_in_not_s",
    "min_rank_in_s",
    "parse_2p2n_3sat",
    "proper_assignment",
    "run_to_equilibrium",
    "verify_swing",
]
