"""Pole structure, convergence regions and numerics for Shintani zeta functions."""

from .errors import (
    GraphProcedureError,
    InfeasibleInstance,
    OutsideConvergenceRegion,
    ShintaniError,
)
from .matrix_core import (
    SigmaMatrix,
    SupportVector,
    column_supports,
    load_matrix,
    matrix_from_supports,
    parse_matrix,
    skeleton,
    validate_matrix,
)
from .poles import (
    PoleFamily,
    PoleReport,
    convergence_check,
    enumerate_pole_families,
    sufficient_box_check,
    transform_pole_families,
)
from .polyhedra import (
    HalfspaceSystem,
    halfspace_description,
    membership_flow,
    verify_polyhedron_equality,
)
from .weights import (
    Decomposition,
    WeightInstance,
    check_hall_condition,
    decompose_flow,
    decompose_graph,
)
from .zeta import EvalRequest, EvalResult, eval_kernel, eval_zeta, mellin_cross_check_1d, zeta_value

__version__ = "0.1.0"
