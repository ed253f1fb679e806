#pragma once

// Canonical symplectic linear algebra on phase space R^{2n} and the product
// space R^{4n}: structure matrices and the matrix predicates used everywhere
// else. Product-space coordinates are ordered Z = (q, p, Q, P) throughout.

#include "liouform/matrix.hpp"

namespace liouform::canonical {

// [[0, I],[-I, 0]], size 2n x 2n.
Matrix j0(int n);

// diag(J0, -J0), size 4n x 4n; the structure matrix of the product space.
Matrix jtilde(int n);

struct PredicateResult {
    bool ok;
    double residual;
};

// True iff ||B^T J0 + J0 B||_max <= tol (equivalently, J0 B symmetric).
PredicateResult is_hamiltonian_matrix(const Matrix& B, double tol = kIdentityTol);

// True iff ||M^T J M - J||_max <= tol.
PredicateResult is_symplectic_matrix(const Matrix& M, const Matrix& J,
                                     double tol = kIdentityTol);

struct RotationResult {
    bool ok;
    double orthogonality_residual;  // ||R^T R - I||_max
    double symplecticity_residual;  // ||R^T Jtilde R - Jtilde||_max
};

// True iff R is orthogonal and preserves Jtilde(n), both at tol.
RotationResult is_symplectic_rotation(const Matrix& R, int n,
                                      double tol = kIdentityTol);

}  // namespace liouform::canonical
