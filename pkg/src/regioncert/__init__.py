"""Certified Newton convergence for square polynomial systems.

Alpha-theory bounds are evaluated over interval boxes, so a single
computation certifies every point of a box as an approximate zero.
"""

__version__ = "0.1.0"

from .alpha import (
    CertResult,
    Clustering,
    PairVerdict,
    alpha_threshold,
    beta_bound,
    certify_box,
    certify_boxes,
    certify_point,
    classify_pair,
    cluster_solutions,
    gamma_bound,
    mu_bound,
    uniqueness_threshold,
)
from .errors import (
    DimensionMismatch,
    DivisionByZeroInterval,
    DualMisuse,
    IntervalError,
    NonSquareSystem,
    ParseError,
    PrecisionMismatch,
    SingularEnclosure,
    SingularJacobian,
)
from .interval import EMPTY, ComplexInterval, RealInterval, widen
from .linalg import (
    IntervalMatrix,
    IntervalVector,
    LUFactors,
    box_distance,
    frob_mag_norm,
    invert,
    lu_decompose,
    matvec,
    solve,
    vec_mag_norm,
    vec_mig_norm,
)
from .polysys import (
    PolySystem,
    Polynomial,
    bw_norm,
    delta_matrix,
    eval_closure,
    jacobian_closure,
    newton_step,
    parse_points,
    parse_system,
)
from .precision import DOUBLE, MPFRContext, DoubleContext, get_context
