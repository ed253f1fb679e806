#include "liouform/derivation.hpp"

#include <Eigen/SVD>

#include "liouform/canonical.hpp"
#include "liouform/errors.hpp"

namespace liouform::derivation {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::symplectic: return "symplectic";
        case Verdict::non_symplectic: return "non_symplectic";
        case Verdict::null_map: return "null_map";
    }
    return "?";
}

Matrix vertical_coefficients(const forms::LiouvillianForm& form) {
    return form.matrix();
}

Matrix tangent_coefficients(const forms::LiouvillianForm& form) {
    return canonical::jtilde(form.n()).transpose() * form.matrix();
}

ImplicitMapPair implicit_map(const forms::LiouvillianForm& form) {
    const int n = form.n();
    const Matrix T = tangent_coefficients(form);
    const Matrix rho = T.topRows(2 * n) + T.bottomRows(2 * n);
    return {n, rho.leftCols(2 * n), rho.rightCols(2 * n)};
}

SymplecticityReport classify_map(const ImplicitMapPair& map, double tol) {
    if (tol < 0) throw InvalidSpecError("tolerance must be nonnegative");
    SymplecticityReport rep;
    rep.n = map.n;
    rep.map = map;
    rep.tol = tol;
    const int n2 = 2 * map.n;
    rep.identity_residual = max_abs(map.P0 + map.Ph - Matrix::Identity(n2, n2));
    rep.b = 0.5 * (map.Ph - map.P0);
    rep.hamiltonian_residual = canonical::is_hamiltonian_matrix(rep.b, tol).residual;
    rep.rho_is_zero = max_abs(map.P0) <= tol && max_abs(map.Ph) <= tol;
    if (rep.rho_is_zero) {
        rep.verdict = Verdict::null_map;
    } else if (rep.identity_residual <= tol && rep.hamiltonian_residual <= tol) {
        rep.verdict = Verdict::symplectic;
    } else {
        rep.verdict = Verdict::non_symplectic;
    }
    return rep;
}

SymplecticityReport classify(const forms::LiouvillianForm& form, double tol) {
    return classify_map(implicit_map(form), tol);
}

std::vector<Vector> kernel_basis(const forms::LiouvillianForm& form, double tol) {
    const Matrix& A = form.matrix();
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * (sv.size() > 0 ? sv(0) : 0.0);
    std::vector<Vector> basis;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cutoff) basis.push_back(svd.matrixV().col(i));
    }
    return basis;
}

}  // namespace liouform::derivation
