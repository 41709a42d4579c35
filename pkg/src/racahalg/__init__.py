"""Exact univariate and bivariate Racah polynomials, their difference
operators on finite grids, and exact checks of the quadratic algebras they
generate."""

__version__ = "0.1.0"

from .errors import (
    ClosureError,
    DimensionError,
    NonDiagonalizableError,
    PoleError,
    RacahError,
    SingularError,
    SuiteFailure,
    ValidityError,
)
from .exactnum import (
    Rational,
    as_rational,
    format_rational,
    hyp4F3_terminating,
    parse_rational,
    pochhammer,
    racah_r,
)
from .gridop import (
    Grid,
    GridFunction,
    OperatorMatrix,
    StencilOperator,
    commutator,
    degree_set,
    is_zero,
    materialize,
    segment,
    solve_weight,
    triangle,
)
from .racah1 import (
    RacahParams1,
    SU11Weights,
    beta_from_nu,
    coeff_B,
    coeff_E,
    eigenvalue1,
    kappa,
    lambda1_matrix,
    lambda1_stencil,
    qr3_constants,
    racah1_eval,
    racah1_table,
)
from .racah2 import (
    RacahParams2,
    dual_map,
    lambda1x_op,
    lambda2x_op,
    omega1_op,
    params_from_nu,
    racah2_eval,
    racah2_eval_my,
    racah2_table,
)
from .algebra import (
    OperatorSet,
    RelationReport,
    build_operator_set,
    verify_casimir_catalog,
    verify_qr9_catalog,
    verify_univariate_qr3,
)
from .suites import DEFAULT_PACKS, run_all, run_suite
