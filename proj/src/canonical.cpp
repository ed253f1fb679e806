#include "liouform/canonical.hpp"

#include <string>

#include "liouform/errors.hpp"

namespace liouform::canonical {

namespace {

void require_positive(int n) {
    if (n < 1) {
        throw InvalidDimensionError("dimension n must be >= 1, got " +
                                    std::to_string(n));
    }
}

}  // namespace

Matrix j0(int n) {
    require_positive(n);
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Matrix::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return j;
}

Matrix jtilde(int n) {
    require_positive(n);
    Matrix jt = Matrix::Zero(4 * n, 4 * n);
    jt.topLeftCorner(2 * n, 2 * n) = j0(n);
    jt.bottomRightCorner(2 * n, 2 * n) = -j0(n);
    return jt;
}

PredicateResult is_hamiltonian_matrix(const Matrix& B, double tol) {
    if (B.rows() != B.cols() || B.rows() % 2 != 0 || B.rows() == 0) {
        throw InvalidDimensionError("Hamiltonian test needs a square matrix of even size");
    }
    const Matrix j = j0(static_cast<int>(B.rows()) / 2);
    const double res = max_abs(B.transpose() * j + j * B);
    return {res <= tol, res};
}

PredicateResult is_symplectic_matrix(const Matrix& M, const Matrix& J, double tol) {
    if (M.rows() != M.cols() || J.rows() != J.cols() || M.rows() != J.rows() ||
        M.rows() % 2 != 0 || M.rows() == 0) {
        throw InvalidDimensionError("symplectic test needs square matrices of matching even size");
    }
    const double res = max_abs(M.transpose() * J * M - J);
    return {res <= tol, res};
}

RotationResult is_symplectic_rotation(const Matrix& R, int n, double tol) {
    require_positive(n);
    if (R.rows() != 4 * n || R.cols() != 4 * n) {
        throw InvalidDimensionError("symplectic rotation test needs a 4n x 4n matrix");
    }
    const Matrix jt = jtilde(n);
    const double ro = max_abs(R.transpose() * R - Matrix::Identity(4 * n, 4 * n));
    const double rs = max_abs(R.transpose() * jt * R - jt);
    return {ro <= tol && rs <= tol, ro, rs};
}

}  // namespace liouform::canonical
