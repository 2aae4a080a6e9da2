"""Lebesgue-type decompositions of sesquilinear forms on C^n.

Forms are passed as square complex numpy arrays A with t(phi, psi) = psi^* A phi.
"""

from ._core import (
    FormError,
    Tolerance,
    ac_extremal_check,
    classify_range,
    construct_dominating,
    decompose,
    decompose_nonneg,
    decompose_via_forms,
    is_absolutely_continuous,
    is_mixed_certificate,
    is_omega_bounded,
    is_psd,
    is_regular,
    is_singular_nonneg,
    is_strongly_singular,
    kernel_basis,
    lebesgue_decompose_measure,
    m_membership,
    operator_norm,
    pinv_sqrt,
    psd_sqrt,
    run_json,
    selftest,
    singularity_sufficient,
    total_variation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
