"""Continuous functional calculus for commuting Hermitian tuples.

Exact Polya positivity certificates for rational expressions in the
generators, and a calculus engine over commuting Hermitian matrices and
sampled function algebras.
"""

from .calculus import (
    CalculusReport,
    coercive_inverse_check,
    gamma,
    homomorphism_check,
    nullstellensatz_check,
    order_embedding_check,
    pipeline_consistency,
    representation_check,
    spec_complex,
    spectral_map,
    spectrum,
    spectrum_scan,
)
from .chi import AlgebraicChi
from .expr import (
    DomainViolation,
    FunctionExpr,
    absval,
    coercive_inverse,
    compose_1d,
    const,
    eval_expr,
    gamma_rho,
    gamma_rho_eval,
    max2,
    min2,
    neg_part,
    parse_sexpr,
    pos_part,
    pr,
    sqrt_pos,
)
from .functions import (
    SampledDomain,
    grid_domain,
    is_proper_sampled,
    spherical_generator,
    sup_norm_sampled,
    tietze_extend,
)
from .matrix import (
    CommutingTuple,
    JointSpectrum,
    apply_function,
    bicommutant_dimension,
    is_coercive,
    joint_diagonalize,
    joint_spectrum,
    make_commuting_tuple,
    rational_evaluate,
    resolvent_test,
    sup_norm,
    uniform_distance,
)
from .poly import GaussianRational, Polynomial, degree_info, evaluate, parse_poly, poly_arith, render_poly
from .polya import (
    PolyaCertificate,
    PolyaSearchExhausted,
    RationalPositivityInput,
    certify,
    homogenize,
    polya_search,
    verify_certificate,
)

__version__ = "0.1.0"
