"""Exact rational toolkit for dominated positive contractions on finite
weighted L1 spaces: lattice operations, induced norms, statement checkers,
zero-two traces, and seeded property sweeps."""

from .calculus import (
    HomIdentityReport,
    LatticeHomCertificate,
    check_hom_identities,
    is_lattice_contraction,
    is_lattice_homomorphism,
    operator_meet,
    operator_modulus,
)
from .core import (
    ConvergenceError,
    InternalConsistencyError,
    L1Vector,
    MatrixOperator,
    MeasureSpace,
    Rational,
    SpaceMismatchError,
    apply,
    commutes,
    compose,
    dominates,
    is_contraction_l1,
    is_positive,
    l1_norm,
    lp_operator_norm,
    operator_norm_l1,
    power,
    rat,
    vec_abs,
    vec_join,
    vec_meet,
)
from .gallery import (
    PNormGapPair,
    ShearTrio,
    UnitGapPair,
    denominator_cap,
    p_norm_gap_pair,
    random_commuting_family,
    random_dominated_pair,
    random_positive_contraction,
    random_signed_operator,
    shear_trio,
    sigma_max_uniform_2x2,
    unit_gap_pair,
)
from .theorems import (
    AveragingDefectReport,
    CertificateSearch,
    CommutingFamily,
    DecompositionWitness,
    DominatedPair,
    GridCapExceeded,
    HypothesisCheck,
    HypothesisViolation,
    Verdict,
    VerdictReport,
    ZeroTwoTrace,
    averaging_defect,
    build_decomposition,
    check_damped_powers,
    check_family_grid,
    check_meet_bound,
    check_pair_product,
    find_epsilon_certificate,
    zero_two_trace,
)

__version__ = "0.1.0"
