"""Approximation solver for the unconstrained traveling tournament problem:
circle-method double round robins driven by a short Hamilton cycle, with
exact small-instance oracles, bound certificates, and a benchmark harness.
"""

from .analysis import BoundCertificate, CheckResult, certify, gap_percent, lower_bound
from .instance import (
    DistanceMatrix,
    InstanceError,
    MetricViolation,
    load_instance,
    parse_distance_matrix,
    random_euclidean_instance,
    render_distance_matrix,
    validate_metric,
)
from .oracle import OracleResult, brute_force_tsp, exact_uttp
from .schedule import (
    OpponentTable,
    Schedule,
    ScheduleError,
    Violation,
    check_drr,
    check_mirrored,
    check_no_repeater,
    circle_schedule,
    mirror_and_assign,
    parse_schedule_rows,
    relabel,
    render_schedule,
    rotate,
    streak_stats,
)
from .solver import (
    CandidateTransform,
    SolveReport,
    SolverError,
    evaluate_assumption_a,
    evaluate_athome,
    assumption_a_route,
    solve,
    team_assignment,
)
from .tsp import (
    ChristofidesResult,
    Matching,
    PivotedCycle,
    Tour,
    TspError,
    build_pivoted_cycle,
    christofides,
    held_karp,
    min_weight_perfect_matching,
    parse_tour_file,
    select_pivot,
)

__all__ = [
    "BoundCertificate",
    "CandidateTransform",
    "CheckResult",
    "ChristofidesResult",
    "DistanceMatrix",
    "InstanceError",
    "Matching",
    "MetricViolation",
    "OpponentTable",
    "OracleResult",
    "PivotedCycle",
    "Schedule",
    "ScheduleError",
    "SolveReport",
    "SolverError",
    "Tour",
    "TspError",
    "Violation",
    "assumption_a_route",
    "brute_force_tsp",
    "build_pivoted_cycle",
    "certify",
    "check_drr",
    "check_mirrored",
    "check_no_repeater",
    "christofides",
    "circle_schedule",
    "evaluate_assumption_a",
    "evaluate_athome",
    "exact_uttp",
    "gap_percent",
    "held_karp",
    "load_instance",
    "lower_bound",
    "min_weight_perfect_matching",
    "mirror_and_assign",
    "parse_distance_matrix",
    "parse_schedule_rows",
    "parse_tour_file",
    "random_euclidean_instance",
    "relabel",
    "render_distance_matrix",
    "render_schedule",
    "rotate",
    "select_pivot",
    "solve",
    "streak_stats",
    "team_assignment",
    "validate_metric",
]
