#pragma once

#include <Eigen/Dense>

namespace liouform {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Entrywise max-abs norm; every residual in this library is reported in it.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

// Default tolerance for algebraic identities between O(1) matrices.
inline constexpr double kIdentityTol = 1e-12;

}  // namespace liouform
