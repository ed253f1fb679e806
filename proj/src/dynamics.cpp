#include "liouform/dynamics.hpp"

#include <cmath>
#include <utility>

#include "liouform/canonical.hpp"
#include "liouform/errors.hpp"

namespace liouform::dynamics {

namespace {

constexpr double kKeplerRadiusFloor = 1e-8;

void check_state(const HamiltonianSystem& system, const Vector& z) {
    if (z.size() != 2 * system.n) {
        throw InvalidDimensionError("state must have length 2n = " +
                                    std::to_string(2 * system.n) + ", got " +
                                    std::to_string(z.size()));
    }
    if (!all_finite(z)) throw InvalidSpecError("state has non-finite entries");
}

// Central-difference probe of the gradient at a few fixed points; builtin
// constructors run this once so that energy/gradient mismatches fail fast.
void validate_gradient(const HamiltonianSystem& system,
                       const std::vector<Vector>& points) {
    const double eps = 1e-6;
    for (const Vector& z : points) {
        const Vector g = system.gradient(z);
        for (int i = 0; i < z.size(); ++i) {
            Vector zp = z, zm = z;
            zp[i] += eps;
            zm[i] -= eps;
            const double fd = (system.energy(zp) - system.energy(zm)) / (2 * eps);
            const double scale = std::max(1.0, std::abs(g[i]));
            if (std::abs(fd - g[i]) > 1e-6 * scale) {
                throw InvalidSpecError("gradient of '" + system.name +
                                       "' disagrees with finite differences");
            }
        }
    }
}

HamiltonianSystem make_harmonic(int n) {
    HamiltonianSystem sys;
    sys.n = n;
    sys.name = "harmonic";
    sys.energy = [](const Vector& z) { return 0.5 * z.squaredNorm(); };
    sys.gradient = [](const Vector& z) { return z; };
    sys.hessian = [](const Vector& z) {
        return Matrix::Identity(z.size(), z.size());
    };
    return sys;
}

HamiltonianSystem make_pendulum() {
    HamiltonianSystem sys;
    sys.n = 1;
    sys.name = "pendulum";
    sys.energy = [](const Vector& z) {
        return 0.5 * z[1] * z[1] - std::cos(z[0]);
    };
    sys.gradient = [](const Vector& z) {
        Vector g(2);
        g[0] = std::sin(z[0]);
        g[1] = z[1];
        return g;
    };
    sys.hessian = [](const Vector& z) {
        Matrix h = Matrix::Identity(2, 2);
        h(0, 0) = std::cos(z[0]);
        return h;
    };
    return sys;
}

HamiltonianSystem make_kepler(double mu) {
    HamiltonianSystem sys;
    sys.n = 2;
    sys.name = "kepler";
    auto radius = [](const Vector& z) {
        const double r = std::hypot(z[0], z[1]);
        if (r < kKeplerRadiusFloor) {
            throw SingularityError("kepler evaluation too close to the collision set");
        }
        return r;
    };
    sys.energy = [mu, radius](const Vector& z) {
        return 0.5 * (z[2] * z[2] + z[3] * z[3]) - mu / radius(z);
    };
    sys.gradient = [mu, radius](const Vector& z) {
        const double r = radius(z);
        const double r3 = r * r * r;
        Vector g(4);
        g[0] = mu * z[0] / r3;
        g[1] = mu * z[1] / r3;
        g[2] = z[2];
        g[3] = z[3];
        return g;
    };
    sys.hessian = [mu, radius](const Vector& z) {
        const double r = radius(z);
        const double r3 = r * r * r, r5 = r3 * r * r;
        Matrix h = Matrix::Zero(4, 4);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                h(i, j) = mu * ((i == j ? 1.0 / r3 : 0.0) - 3.0 * z[i] * z[j] / r5);
            }
        }
        h(2, 2) = h(3, 3) = 1.0;
        return h;
    };
    return sys;
}

}  // namespace

HamiltonianSystem quadratic_system(const Matrix& M) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0) {
        throw InvalidSpecError("quadratic system needs a 2n x 2n matrix");
    }
    if (max_abs(M - M.transpose()) > kIdentityTol) {
        throw InvalidSpecError("quadratic system matrix must be symmetric");
    }
    HamiltonianSystem sys;
    sys.n = static_cast<int>(M.rows()) / 2;
    sys.name = "quadratic";
    sys.energy = [M](const Vector& z) { return 0.5 * z.dot(M * z); };
    sys.gradient = [M](const Vector& z) { return Vector(M * z); };
    sys.hessian = [M](const Vector&) { return M; };
    return sys;
}

HamiltonianSystem builtin_system(const std::string& name, int n,
                                 const std::vector<double>& params) {
    if (n < 1) throw InvalidDimensionError("system dimension n must be >= 1");
    HamiltonianSystem sys;
    std::vector<Vector> probes;
    if (name == "harmonic") {
        sys = make_harmonic(n);
        probes = {Vector::Constant(2 * n, 0.3), Vector::LinSpaced(2 * n, -1.0, 1.0)};
    } else if (name == "pendulum") {
        if (n != 1) throw InvalidSpecError("pendulum is a one-degree-of-freedom system");
        sys = make_pendulum();
        probes = {(Vector(2) << 1.0, 0.5).finished(), (Vector(2) << -0.7, 0.2).finished()};
    } else if (name == "kepler") {
        if (n != 2) throw InvalidSpecError("kepler requires n = 2");
        double mu = 1.0;
        if (!params.empty()) mu = params[0];
        if (params.size() > 1) throw InvalidSpecError("kepler takes a single parameter mu");
        if (!(mu > 0)) throw InvalidSpecError("kepler requires mu > 0");
        sys = make_kepler(mu);
        probes = {(Vector(4) << 1.0, 0.2, 0.1, 0.9).finished()};
    } else if (name == "quadratic") {
        const int m = 2 * n;
        if (static_cast<int>(params.size()) != m * m) {
            throw InvalidSpecError("quadratic system needs " + std::to_string(m * m) +
                                   " row-major matrix entries");
        }
        Matrix M(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) M(i, j) = params[i * m + j];
        sys = quadratic_system(M);
        probes = {Vector::LinSpaced(m, -0.5, 0.8)};
    } else {
        throw InvalidSpecError("unknown system '" + name + "'");
    }
    validate_gradient(sys, probes);
    return sys;
}

Vector hamiltonian_vector_field(const HamiltonianSystem& system, const Vector& z) {
    check_state(system, z);
    return canonical::j0(system.n) * system.gradient(z);
}

SchemeSpec named_scheme(const std::string& name, int n) {
    if (n < 1) throw InvalidDimensionError("scheme dimension n must be >= 1");
    const int m = 2 * n;
    derivation::ImplicitMapPair map;
    map.n = n;
    if (name == "midpoint") {
        map.P0 = 0.5 * Matrix::Identity(m, m);
        map.Ph = 0.5 * Matrix::Identity(m, m);
    } else if (name == "euler-b" || name == "euler_b") {
        // phi = 0: rho = (Q, p)
        map.P0 = Matrix::Zero(m, m);
        map.P0.bottomRightCorner(n, n) = Matrix::Identity(n, n);
        map.Ph = Matrix::Zero(m, m);
        map.Ph.topLeftCorner(n, n) = Matrix::Identity(n, n);
    } else if (name == "euler-a" || name == "euler_a") {
        // phi = pi/2: rho = (q, P)
        map.P0 = Matrix::Zero(m, m);
        map.P0.topLeftCorner(n, n) = Matrix::Identity(n, n);
        map.Ph = Matrix::Zero(m, m);
        map.Ph.bottomRightCorner(n, n) = Matrix::Identity(n, n);
    } else if (name == "explicit-euler" || name == "explicit_euler") {
        map.P0 = Matrix::Identity(m, m);
        map.Ph = Matrix::Zero(m, m);
    } else {
        throw InvalidSpecError("unknown scheme '" + name + "'");
    }
    return {std::move(map), name};
}

SchemeSpec scheme_from_form(const forms::LiouvillianForm& form, std::string label) {
    SchemeSpec scheme{derivation::implicit_map(form), std::move(label)};
    if (scheme.label.empty()) scheme.label = "derived";
    return scheme;
}

namespace {

Vector scheme_rhs(const SchemeSpec& scheme, const HamiltonianSystem& system,
                  const Vector& z0, const Vector& z, double h) {
    const Vector rho = scheme.map.P0 * z0 + scheme.map.Ph * z;
    return z0 + h * hamiltonian_vector_field(system, rho);
}

StepResult fixed_point_step(const SchemeSpec& scheme, const HamiltonianSystem& system,
                            const Vector& z0, double h, const SolverOptions& opts) {
    Vector z = z0;
    double residual = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= opts.max_iterations; ++k) {
        const Vector w = scheme_rhs(scheme, system, z0, z, h);
        residual = max_abs(Vector(w - z));  // == implicit-equation residual at z
        if (residual <= opts.tolerance) return {z, k};
        if (!all_finite(w)) break;
        z = w;
    }
    throw SolverFailureError("fixed-point iteration did not converge", residual,
                             opts.max_iterations);
}

StepResult newton_step(const SchemeSpec& scheme, const HamiltonianSystem& system,
                       const Vector& z0, double h, const SolverOptions& opts) {
    if (!system.hessian) {
        throw UnsupportedMethodError("Newton solver needs a system Hessian");
    }
    const Matrix j = canonical::j0(system.n);
    const int m = 2 * system.n;
    Vector z = z0;
    double residual = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= opts.max_iterations; ++k) {
        const Vector rho = scheme.map.P0 * z0 + scheme.map.Ph * z;
        const Vector f = z - z0 - h * (j * system.gradient(rho));
        residual = max_abs(f);
        if (residual <= opts.tolerance) return {z, k};
        const Matrix jac =
            Matrix::Identity(m, m) - h * j * system.hessian(rho) * scheme.map.Ph;
        const Vector dz = jac.partialPivLu().solve(f);
        if (!all_finite(dz)) break;
        z -= dz;
    }
    throw SolverFailureError("Newton iteration did not converge", residual,
                             opts.max_iterations);
}

}  // namespace

StepResult step(const SchemeSpec& scheme, const HamiltonianSystem& system,
                const Vector& z0, double h, const SolverOptions& opts) {
    check_state(system, z0);
    if (scheme.map.n != system.n) {
        throw InvalidDimensionError("scheme and system dimensions disagree");
    }
    // Negative h runs the scheme backwards in time; only h = 0 is rejected.
    if (h == 0.0 || !std::isfinite(h)) throw InvalidSpecError("step size h must be nonzero");
    if (!(opts.tolerance > 0)) throw InvalidSpecError("solver tolerance must be positive");
    if (opts.max_iterations < 1) throw InvalidSpecError("max_iterations must be positive");
    return opts.method == SolverMethod::newton
               ? newton_step(scheme, system, z0, h, opts)
               : fixed_point_step(scheme, system, z0, h, opts);
}

IntegrationResult integrate(const SchemeSpec& scheme, const HamiltonianSystem& system,
                            const Vector& z0, double h, int steps,
                            const SolverOptions& opts) {
    check_state(system, z0);
    if (steps < 0) throw InvalidSpecError("step count must be nonnegative");
    IntegrationResult result;
    Trajectory& traj = result.trajectory;
    traj.h = h;
    traj.states.reserve(steps + 1);
    traj.states.push_back(z0);
    traj.energies.push_back(system.energy(z0));
    traj.solver_iterations.push_back(0);
    for (int k = 0; k < steps; ++k) {
        try {
            StepResult s = step(scheme, system, traj.states.back(), h, opts);
            traj.energies.push_back(system.energy(s.z));
            traj.states.push_back(std::move(s.z));
            traj.solver_iterations.push_back(s.iterations);
        } catch (const Error& e) {
            result.completed = false;
            result.error = e.what();
            break;
        }
    }
    return result;
}

Matrix linear_step_matrix(const SchemeSpec& scheme, const Matrix& M, double h) {
    const int m = 2 * scheme.map.n;
    if (M.rows() != m || M.cols() != m) {
        throw InvalidDimensionError("quadratic energy matrix must be 2n x 2n");
    }
    const Matrix S = canonical::j0(scheme.map.n) * M;
    const Matrix lhs = Matrix::Identity(m, m) - h * S * scheme.map.Ph;
    Eigen::FullPivLU<Matrix> lu(lhs);
    if (!lu.isInvertible()) {
        throw StepSingularError("implicit step matrix is singular at h = " +
                                    std::to_string(h),
                                h);
    }
    return lu.solve(Matrix::Identity(m, m) + h * S * scheme.map.P0);
}

}  // namespace liouform::dynamics
