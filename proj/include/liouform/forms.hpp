#pragma once

// Constant-coefficient 1-forms theta = dZ^T [A] Z on the product phase space,
// Z = (q, p, Q, P) in R^{4n}. Row i of A holds the coefficient of dZ_i as a
// linear function of Z. A form is Liouvillian for the product structure
// exactly when A - A^T = Jtilde(n); constructions that can break exactness
// (pullbacks, generator pairings) return the form flagged instead of failing.

#include <string>
#include <vector>

#include "liouform/matrix.hpp"

namespace liouform::forms {

class LiouvillianForm {
  public:
    // Validates exactness; throws NotLiouvillianError when the antisymmetric
    // part is not Jtilde/2 within tol.
    static LiouvillianForm checked(int n, Matrix A, double tol = kIdentityTol);

    // Accepts any finite coefficient matrix and records the exactness residual.
    static LiouvillianForm with_status(int n, Matrix A, double tol = kIdentityTol);

    int n() const { return n_; }
    const Matrix& matrix() const { return a_; }
    bool is_liouvillian() const { return liouvillian_; }
    double exactness_residual() const { return exactness_residual_; }

  private:
    LiouvillianForm(int n, Matrix a, bool liouvillian, double residual)
        : n_(n), a_(std::move(a)), liouvillian_(liouvillian),
          exactness_residual_(residual) {}

    int n_;
    Matrix a_;
    bool liouvillian_;
    double exactness_residual_;
};

enum class Family {
    poincare,            // (1/2)[(p-P)dq + (Q-q)dp + (p-P)dQ + (Q-q)dP]
    theta_phi,           // rotation family, parameter phi
    midpoint_canonical,  // (1/2)(p dq - q dp - P dQ + Q dP), matrix Jtilde/2
    euler_a,             // theta_phi at phi = pi/2: -q dp - P dQ
    euler_b,             // theta_phi at phi = 0:     p dq + Q dP
    abc_family,          // per-index parameters (alpha_i, beta_i, gamma_i)
    midpoint_family,     // abc with alpha = beta, gamma = -beta
    custom_matrix,
};

const char* to_string(Family f);
Family family_from_string(const std::string& name);

struct FamilySpec {
    Family family = Family::midpoint_canonical;
    int n = 1;
    double phi = 0.0;          // theta_phi
    Vector alpha, beta, gamma; // abc_family (all three), midpoint_family (beta)
    Matrix matrix;             // custom_matrix, 4n x 4n row-major semantics
};

// Builds the named family member; throws InvalidSpecError on arity mismatch.
LiouvillianForm make_family_form(const FamilySpec& spec);

// Strict constructor from a raw 4n x 4n matrix.
LiouvillianForm form_from_matrix(int n, const Matrix& A, double tol = kIdentityTol);

// The symplectic rotation R_phi on R^{4n} (orthogonal and Jtilde-preserving).
Matrix rotation_matrix(int n, double phi);

// Signed permutation identifying (q,p,Q,P) with cotangent coordinates
// (x,X,y,Y) on T*(Q1 x Q2); pulls y dx + Y dX back to p dq - P dQ.
Matrix e1_matrix(int n);

// E1 * R_phi, the transform whose pullback of the tautological form yields
// the theta_phi family.
Matrix psi_matrix(int n, double phi);

// Tautological 1-form y dx + Y dX in coordinates (x,X,y,Y). Not Liouvillian
// for the product structure (its exterior differential is the sum form, not
// the difference), so it is returned flagged.
LiouvillianForm tautological_product_form(int n);

// Pullback T^* theta with matrix T^T A T. Non-symplectic T legitimately
// breaks exactness; the result is then flagged. Throws SingularTransformError
// when T is numerically singular.
LiouvillianForm pullback_form(const Matrix& T, const LiouvillianForm& base);

// Pairing constructor: rows 1..2n of T are the coefficient covector W_up,
// rows 2n+1..4n the differential variable W_low, and
// theta = <W_up Z, d(W_low Z)>, i.e. A = W_low^T W_up. Flagged when inexact.
LiouvillianForm form_from_generator(const Matrix& T);

struct MatricialDecomposition {
    Matrix antisymmetric;  // (A - A^T)/2, equals Jtilde/2 for valid forms
    Matrix symmetric;      // (A + A^T)/2
};

MatricialDecomposition matricial_decomposition(const LiouvillianForm& form);

// The two symmetric basis blocks of the theta_phi decomposition
// A = Jtilde/2 + (cos 2phi / 2) K1 + (sin 2phi / 2) K2.
Matrix k1_matrix(int n);
Matrix k2_matrix(int n);

}  // namespace liouform::forms
