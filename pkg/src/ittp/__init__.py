"""Toolkit for the incomplete Traveling Tournament Problem.

Construct, validate, bound, and heuristically optimize incomplete
round-robin timetables that minimize road-trip travel distance, and export
the corresponding integer programs for external MILP solvers.
"""

from .bounds import BoundReport, dlb, edge_colorable, ilb, min_legs_formula, trip_count_floor
from .construct import (
    circle_single_rr,
    min_legs_haps,
    orient_pairwise,
    shuffled_rr_prefix,
    zero_break_haps,
)
from .errors import (
    CapExceededError,
    ContractError,
    InstanceLoadError,
    InvalidParametersError,
    StructureError,
)
from .exact import solve_exact
from .heuristic import (
    MoveTHAS,
    SolveReport,
    apply_move,
    gm_constructive,
    gm_iterative,
    initial_assignment,
    match_cost,
    thas_connect,
)
from .instance import Instance, derive_rounds, generate, load, write
from .matching import Matching, min_weight_perfect_matching
from .modelgen import ModelFile, export_dlb, export_f1, export_f2, export_f2_hap
from .schedule import (
    HapAssignment,
    Timetable,
    TravelReport,
    Violation,
    extract_haps,
    travel,
    validate,
)
from .trips import RoadTrip, TripCatalog, enumerate_trips, per_team_count, prune_dominated

__version__ = "0.1.0"
