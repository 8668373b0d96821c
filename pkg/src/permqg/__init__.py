"""Classification and verification toolkit for six-entry permutation arrays.

The package classifies a nowhere-zero complex function on the
permutations of (1, 2, 3) into one of four families (torus, a one-complex-
parameter two-block family, and two three-index families), computes the
scalar invariants driving the classification, builds explicit matrix
representations for each family, and numerically verifies the defining
relations and intertwiner identities on those representations.
"""

from .classifier import (
    BlockStructure,
    Classification,
    akm_pattern_match,
    case3_solve,
    classify,
    constrained_family_array,
    nontriviality,
    reduce_case3,
    uq2_match,
)
from .errors import (
    BadFamily,
    CommutationMismatch,
    DimensionMismatch,
    DimensionOverflow,
    InconsistentInvariants,
    InvalidParam,
    PermQGError,
    UnsupportedParam,
    Unclassifiable,
    ZeroEntry,
    ZeroScale,
)
from .intertwiners import IntertwinerSet, build, check_static_identities
from .invariants import (
    InvariantReport,
    character_scale_and_kac,
    characteristic_constants,
    compute_invariants,
    diagonal_constants,
    modular_constants,
)
from .perm_array import (
    DEFAULT_TOLERANCE,
    PERMS,
    ArrayParams,
    PermArray,
    all_ones,
    complement,
    def_akm,
    def_su,
    from_json_dict,
    from_tuple,
    named_array,
    normalize,
    permute_and_scale,
    random_array,
    su3_inversions,
    to_json_dict,
    uq2_cycles,
    uq2_example,
    zeta_pow,
)
from .representations import (
    Representation,
    RotationRepSpec,
    SemidirectElement,
    akm_irreps,
    apm_torus_rep,
    blocks_to_matrix,
    clock_shift_pair,
    diagonal_rep,
    interior_projector,
    representation_from_json,
    semidirect_matrix,
    semidirect_mul,
    semidirect_point_rep,
    tensor_power,
    uq2_fock_truncated,
    uq2_generator_residuals,
    uq2_generators,
    uq2_one_dim,
    uq2_reps,
)
from .verifier import (
    CheckResult,
    RelationCoefficients,
    VerificationReport,
    check_adjoint_formulas,
    check_commutation,
    check_modular,
    check_morphism,
    check_partial_isometries,
    check_twisted_determinant,
    check_unitarity,
    relation_coefficients,
    run_all,
)

__version__ = "0.1.0"
