#pragma once

// The four-step derivation: from a form's coefficient matrix compute the
// vertical-space coefficients, the tangent-space coefficients Jtilde^T A,
// the projected implicit map rho(z0, zh) = P0 z0 + Ph zh, and classify
// whether the induced one-step scheme zh = z0 + h X_H(rho) is symplectic.

#include <vector>

#include "liouform/forms.hpp"
#include "liouform/matrix.hpp"

namespace liouform::derivation {

struct ImplicitMapPair {
    int n = 0;
    Matrix P0;  // 2n x 2n
    Matrix Ph;  // 2n x 2n
};

enum class Verdict { symplectic, non_symplectic, null_map };

const char* to_string(Verdict v);

struct SymplecticityReport {
    int n = 0;
    ImplicitMapPair map;
    double identity_residual = 0.0;     // ||P0 + Ph - I||_max
    Matrix b;                           // (Ph - P0)/2
    double hamiltonian_residual = 0.0;  // ||b^T J0 + J0 b||_max
    Verdict verdict = Verdict::non_symplectic;
    bool rho_is_zero = false;
    double tol = kIdentityTol;
};

// Hat functions (q^, p^, Q^, P^)(Z) = V Z; with the row-coefficient
// representation V is the coefficient matrix itself.
Matrix vertical_coefficients(const forms::LiouvillianForm& form);

// Jtilde^T A: blockwise (q^,p^,Q^,P^) -> (-p^, q^, P^, -Q^).
Matrix tangent_coefficients(const forms::LiouvillianForm& form);

// rho = [I | I] Jtilde^T A, split into the z0 and zh column blocks.
ImplicitMapPair implicit_map(const forms::LiouvillianForm& form);

// verdict = null_map when both blocks vanish at tol; symplectic when
// P0 + Ph = I and b = (Ph - P0)/2 is a Hamiltonian matrix, both at tol.
SymplecticityReport classify(const forms::LiouvillianForm& form,
                             double tol = kIdentityTol);
SymplecticityReport classify_map(const ImplicitMapPair& map,
                                 double tol = kIdentityTol);

// Orthonormal basis of the null space of the coefficient matrix; singular
// values below tol * sigma_max count as zero.
std::vector<Vector> kernel_basis(const forms::LiouvillianForm& form,
                                 double tol = kIdentityTol);

}  // namespace liouform::derivation
