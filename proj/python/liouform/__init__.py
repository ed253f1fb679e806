"""Constant-coefficient 1-forms on product phase space, the implicit one-step
maps they derive to, and the induced symplectic integrators."""

from ._liouform import (
    InvalidDimensionError,
    InvalidSpecError,
    LiouvillianForm,
    NotLiouvillianError,
    SchemeSpec,
    SingularTransformError,
    SolverFailureError,
    builtin_system,
    classify,
    e1_matrix,
    form_from_generator,
    form_from_matrix,
    hamiltonian_vector_field,
    implicit_map,
    integrate,
    is_hamiltonian_matrix,
    is_symplectic_matrix,
    is_symplectic_rotation,
    j0,
    jtilde,
    kernel_basis,
    linear_step_matrix,
    make_form,
    matricial_decomposition,
    named_scheme,
    psi_matrix,
    pullback_form,
    quadratic_system,
    rotation_matrix,
    run_checks,
    scheme_from_form,
    step,
    step_jacobian,
    sweep_theta_phi,
    symplectic_residual,
    tangent_coefficients,
    tautological_product_form,
    vertical_coefficients,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
