"""Generalized Robertson positive maps and their entanglement witnesses.

Construction of the map family on 4N x 4N matrices parametrized by an
antisymmetric unitary, the associated Choi-matrix witnesses, the explicit
PPT entangled states they detect, and mechanical certificates for
positivity, nondecomposability, optimality, self-duality and the
entanglement-breaking property of the structural physical approximation.
"""

from .certify import (
    SpanningFamily,
    block_positivity_seesaw,
    detect,
    detection_root,
    detection_sum,
    isotropic_detection_value,
    run_full_suite,
    spa_threshold_bisect,
    spa_threshold_closed_form,
    spa_witness,
    spanning_family,
    verify_eb_certificate,
    verify_nd_optimality,
    verify_nondecomposability,
    verify_optimality,
    verify_positivity,
    verify_self_duality,
)
from .linalg import BlockView, assemble, blocks, hermitian_eig, kron, numerical_rank, partial_transpose
from .maps import (
    SIGMA_Y,
    MapDescriptor,
    apply_map,
    breuer_hall,
    canonical_u0,
    conjugate_u0,
    conjugated_phi,
    input_dim,
    map_i,
    map_ii,
    phi_u,
    psi_2k,
    random_antisymmetric_unitary,
    random_unitary,
    reduction_map,
    robertson4,
)
from .report import CertReport
from .states import (
    DensityOperator,
    isotropic_entanglement_threshold,
    isotropic_state,
    normalization_factor,
    ppt_entangled_state,
)
from .witnesses import (
    Witness,
    choi,
    expected_spectrum,
    gamma_unitary,
    max_entangled,
    transform_witness,
    verify_spectrum,
)

__version__ = "0.1.0"
