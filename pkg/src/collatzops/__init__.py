"""Collatz coefficient operators on truncated sparse power series.

Exact (rational-complex) realizations of the pushforward operator T and
its Hardy-space adjoint F, every explicit fixed-point and eigenvector
family they admit, the bivariate resolvent, the circle-measure picture,
and the symbolic progression calculus -- all with mechanical residual
verification at finite truncation.
"""

from .coeffs import Coeff, as_coeff, parse_exact
from .collatz import (
    CycleReport,
    StoppingTime,
    collatz_iterate,
    collatz_step,
    default_cap,
    detect_cycle,
    inverse_step,
    sigma_sweep,
    total_stopping_time,
)
from .operators import (
    B_OP,
    F_OP,
    GenMonomialSum,
    L_OP,
    OperatorKind,
    S_INV,
    T_OP,
    apply_B,
    apply_F,
    apply_L,
    apply_S_inv,
    apply_T,
    apply_T_genmonomial,
    operator_power,
)
from .series import (
    BiSeries,
    SparseSeries,
    bergman_norm_sq,
    compose_power,
    evaluate,
    even_part,
    hardy_inner,
    hardy_norm_sq,
    load_series,
    multiply,
    odd_part,
    save_series,
)
from .fixed_points import (
    Fp2Variant,
    build_f_m,
    build_fp2,
    build_h_m,
    build_psi_subset,
    identify_fp2_variant,
    lacunary_g,
    trajectory_candidate,
    verify_fixed_point,
)
from .stopping_basis import (
    CharParams,
    PolBasisSlice,
    UnresolvedStoppingTime,
    build_char,
    build_pol_k,
    check_basis_iteration,
    check_functional_equation,
    check_matrix_representation,
    check_q_inequality,
    q_series_bound,
)
from .resolvent import PhiSpec, audit_growth, build_resolvent, check_resolvent_identity
from .circle import (
    TrigPoly,
    check_mean_invariance,
    circle_apply_B,
    circle_apply_L,
    circle_apply_T,
)
from .progressions import (
    GTerm,
    PsiTerm,
    TermSum,
    decay_experiment,
    expand,
    oracle_compare,
    rewrite_T,
    telescoping_check,
)
from .report import VerificationReport
from .suites import SUITES, SuiteOptions, run_suite, run_suites

__version__ = "0.1.0"
