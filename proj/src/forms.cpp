#include "liouform/forms.hpp"

#include <cmath>
#include <string>

#include "liouform/canonical.hpp"
#include "liouform/errors.hpp"

namespace liouform::forms {

namespace {

void require_positive(int n) {
    if (n < 1) {
        throw InvalidDimensionError("dimension n must be >= 1, got " +
                                    std::to_string(n));
    }
}

void require_product_size(int n, const Matrix& A, const char* what) {
    if (A.rows() != 4 * n || A.cols() != 4 * n) {
        throw InvalidDimensionError(std::string(what) + ": expected a " +
                                    std::to_string(4 * n) + "x" +
                                    std::to_string(4 * n) + " matrix, got " +
                                    std::to_string(A.rows()) + "x" +
                                    std::to_string(A.cols()));
    }
}

double exactness_defect(int n, const Matrix& A) {
    return max_abs(A - A.transpose() - canonical::jtilde(n));
}

// Writes c * I_n into the n x n block at block position (bi, bj).
void set_block(Matrix& A, int n, int bi, int bj, double c) {
    A.block(bi * n, bj * n, n, n) = c * Matrix::Identity(n, n);
}

Matrix theta_phi_matrix(int n, double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Matrix A = Matrix::Zero(4 * n, 4 * n);
    // Rows carry the coefficients of dq, dp, dQ, dP in that order.
    set_block(A, n, 0, 1, c * c);
    set_block(A, n, 0, 3, -c * s);
    set_block(A, n, 1, 0, -s * s);
    set_block(A, n, 1, 2, c * s);
    set_block(A, n, 2, 1, c * s);
    set_block(A, n, 2, 3, -s * s);
    set_block(A, n, 3, 0, -c * s);
    set_block(A, n, 3, 2, c * c);
    return A;
}

Matrix poincare_matrix(int n) {
    Matrix A = Matrix::Zero(4 * n, 4 * n);
    set_block(A, n, 0, 1, 0.5);
    set_block(A, n, 0, 3, -0.5);
    set_block(A, n, 1, 0, -0.5);
    set_block(A, n, 1, 2, 0.5);
    set_block(A, n, 2, 1, 0.5);
    set_block(A, n, 2, 3, -0.5);
    set_block(A, n, 3, 0, -0.5);
    set_block(A, n, 3, 2, 0.5);
    return A;
}

Matrix abc_matrix(int n, const Vector& alpha, const Vector& beta, const Vector& gamma) {
    Matrix A = Matrix::Zero(4 * n, 4 * n);
    for (int i = 0; i < n; ++i) {
        const int q = i, p = n + i, Q = 2 * n + i, P = 3 * n + i;
        A(q, p) = 0.5 + alpha[i];
        A(q, P) = -gamma[i];
        A(p, q) = -(0.5 - alpha[i]);
        A(p, Q) = beta[i];
        A(Q, p) = beta[i];
        A(Q, P) = -(0.5 - alpha[i]);
        A(P, q) = -gamma[i];
        A(P, Q) = 0.5 + alpha[i];
    }
    return A;
}

void require_length(const Vector& v, int n, const char* name) {
    if (v.size() != n) {
        throw InvalidSpecError(std::string("parameter '") + name +
                               "' must have length n = " + std::to_string(n) +
                               ", got " + std::to_string(v.size()));
    }
}

}  // namespace

LiouvillianForm LiouvillianForm::checked(int n, Matrix A, double tol) {
    require_positive(n);
    require_product_size(n, A, "form");
    if (!all_finite(A)) throw InvalidSpecError("form matrix has non-finite entries");
    const double res = exactness_defect(n, A);
    if (res > tol) {
        throw NotLiouvillianError(
            "matrix is not a Liouvillian form: ||A - A^T - Jtilde||_max = " +
                std::to_string(res),
            res);
    }
    return LiouvillianForm(n, std::move(A), true, res);
}

LiouvillianForm LiouvillianForm::with_status(int n, Matrix A, double tol) {
    require_positive(n);
    require_product_size(n, A, "form");
    if (!all_finite(A)) throw InvalidSpecError("form matrix has non-finite entries");
    const double res = exactness_defect(n, A);
    return LiouvillianForm(n, std::move(A), res <= tol, res);
}

const char* to_string(Family f) {
    switch (f) {
        case Family::poincare: return "poincare";
        case Family::theta_phi: return "theta_phi";
        case Family::midpoint_canonical: return "midpoint_canonical";
        case Family::euler_a: return "euler_a";
        case Family::euler_b: return "euler_b";
        case Family::abc_family: return "abc_family";
        case Family::midpoint_family: return "midpoint_family";
        case Family::custom_matrix: return "custom_matrix";
    }
    return "?";
}

Family family_from_string(const std::string& name) {
    if (name == "poincare") return Family::poincare;
    if (name == "theta_phi") return Family::theta_phi;
    if (name == "midpoint_canonical" || name == "midpoint") return Family::midpoint_canonical;
    if (name == "euler_a") return Family::euler_a;
    if (name == "euler_b") return Family::euler_b;
    if (name == "abc_family" || name == "abc") return Family::abc_family;
    if (name == "midpoint_family") return Family::midpoint_family;
    if (name == "custom_matrix" || name == "custom") return Family::custom_matrix;
    throw InvalidSpecError("unknown form family '" + name + "'");
}

LiouvillianForm make_family_form(const FamilySpec& spec) {
    require_positive(spec.n);
    const int n = spec.n;
    switch (spec.family) {
        case Family::poincare:
            return LiouvillianForm::checked(n, poincare_matrix(n));
        case Family::theta_phi:
            return LiouvillianForm::checked(n, theta_phi_matrix(n, spec.phi));
        case Family::midpoint_canonical:
            return LiouvillianForm::checked(n, 0.5 * canonical::jtilde(n));
        case Family::euler_a:
            return LiouvillianForm::checked(n, theta_phi_matrix(n, M_PI / 2.0));
        case Family::euler_b:
            return LiouvillianForm::checked(n, theta_phi_matrix(n, 0.0));
        case Family::abc_family: {
            require_length(spec.alpha, n, "alpha");
            require_length(spec.beta, n, "beta");
            require_length(spec.gamma, n, "gamma");
            return LiouvillianForm::checked(n, abc_matrix(n, spec.alpha, spec.beta, spec.gamma));
        }
        case Family::midpoint_family: {
            require_length(spec.beta, n, "beta");
            return LiouvillianForm::checked(n, abc_matrix(n, spec.beta, spec.beta, -spec.beta));
        }
        case Family::custom_matrix:
            return form_from_matrix(n, spec.matrix);
    }
    throw InvalidSpecError("unhandled form family");
}

LiouvillianForm form_from_matrix(int n, const Matrix& A, double tol) {
    return LiouvillianForm::checked(n, A, tol);
}

Matrix rotation_matrix(int n, double phi) {
    require_positive(n);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Matrix R = Matrix::Zero(4 * n, 4 * n);
    set_block(R, n, 0, 0, c);
    set_block(R, n, 0, 2, s);
    set_block(R, n, 1, 1, c);
    set_block(R, n, 1, 3, -s);
    set_block(R, n, 2, 1, -s);
    set_block(R, n, 2, 3, -c);
    set_block(R, n, 3, 0, -s);
    set_block(R, n, 3, 2, c);
    return R;
}

Matrix e1_matrix(int n) {
    require_positive(n);
    Matrix E = Matrix::Zero(4 * n, 4 * n);
    set_block(E, n, 0, 0, 1.0);
    set_block(E, n, 1, 2, -1.0);
    set_block(E, n, 2, 1, 1.0);
    set_block(E, n, 3, 3, 1.0);
    return E;
}

Matrix psi_matrix(int n, double phi) {
    return e1_matrix(n) * rotation_matrix(n, phi);
}

LiouvillianForm tautological_product_form(int n) {
    require_positive(n);
    Matrix A = Matrix::Zero(4 * n, 4 * n);
    set_block(A, n, 0, 2, 1.0);  // coefficient of dx is y
    set_block(A, n, 1, 3, 1.0);  // coefficient of dX is Y
    return LiouvillianForm::with_status(n, A);
}

LiouvillianForm pullback_form(const Matrix& T, const LiouvillianForm& base) {
    const int n = base.n();
    require_product_size(n, T, "pullback transform");
    Eigen::FullPivLU<Matrix> lu(T);
    if (!lu.isInvertible()) {
        throw SingularTransformError("pullback transform is singular");
    }
    return LiouvillianForm::with_status(n, T.transpose() * base.matrix() * T);
}

LiouvillianForm form_from_generator(const Matrix& T) {
    if (T.rows() != T.cols() || T.rows() % 4 != 0 || T.rows() == 0) {
        throw InvalidDimensionError("generator matrix must be 4n x 4n");
    }
    const int n = static_cast<int>(T.rows()) / 4;
    const Matrix w_up = T.topRows(2 * n);
    const Matrix w_low = T.bottomRows(2 * n);
    return LiouvillianForm::with_status(n, w_low.transpose() * w_up);
}

MatricialDecomposition matricial_decomposition(const LiouvillianForm& form) {
    const Matrix& A = form.matrix();
    return {0.5 * (A - A.transpose()), 0.5 * (A + A.transpose())};
}

Matrix k1_matrix(int n) {
    require_positive(n);
    Matrix K = Matrix::Zero(4 * n, 4 * n);
    set_block(K, n, 0, 1, 1.0);
    set_block(K, n, 1, 0, 1.0);
    set_block(K, n, 2, 3, 1.0);
    set_block(K, n, 3, 2, 1.0);
    return K;
}

Matrix k2_matrix(int n) {
    require_positive(n);
    Matrix K = Matrix::Zero(4 * n, 4 * n);
    const Matrix j = canonical::j0(n);
    K.topRightCorner(2 * n, 2 * n) = -j;
    K.bottomLeftCorner(2 * n, 2 * n) = j;
    return K;
}

}  // namespace liouform::forms
