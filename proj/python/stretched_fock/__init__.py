"""Stretched coherent states, generalized displacement and squeezing on a truncated Fock basis."""

from ._core import (
    CheckResult,
    DomainError,
    GridMismatchError,
    PhotonStats,
    QuadratureSpec,
    SingularityError,
    SqueezeLabel,
    SqueezedExpectations,
    StretchLabel,
    TruncationConfig,
    TruncationError,
    annihilation_residual,
    bogoliubov,
    displaced_number,
    displacement,
    displacement_normal_ordered,
    evolve,
    evolved_label,
    gauss_laguerre,
    inner_product,
    make_state,
    matrix_element,
    modified_coherent,
    modified_displacement,
    modified_displacement_prefactor,
    multiplication_law,
    overlap,
    photon_pmf,
    photon_stats,
    photon_stats_from_pmf,
    pmf_of,
    radial_completeness,
    reconstruct_vector,
    required_dim,
    run_identity_suite,
    squeezed_coherent,
    squeezed_displaced_number,
    squeezed_expectations,
    squeezing,
    standard_displacement,
)

__version__ = "0.1.0"
