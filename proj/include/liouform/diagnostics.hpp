#pragma once

// Sweep-and-classify experiments over the form families plus the numerical
// symplecticity checks applied to executed schemes. Sweeps parallelize over
// parameter values; the LIOUFORM_THREADS environment variable caps the
// thread count.

#include <vector>

#include "liouform/derivation.hpp"
#include "liouform/dynamics.hpp"
#include "liouform/matrix.hpp"

namespace liouform::diagnostics {

struct SweepRecord {
    std::vector<double> parameters;  // phi, or alpha..,beta..,gamma..
    double identity_residual = 0.0;
    double hamiltonian_residual = 0.0;
    derivation::Verdict verdict = derivation::Verdict::non_symplectic;
    Matrix b;
};

// Classifies theta_phi over the grid; the exact parameters {0, pi/4, pi/2}
// are appended when the grid does not already contain them.
std::vector<SweepRecord> sweep_theta_phi(int n, std::vector<double> grid,
                                         double tol = kIdentityTol);

struct AbcSample {
    Vector alpha, beta, gamma;
};

std::vector<SweepRecord> classify_abc_plane(int n, const std::vector<AbcSample>& samples,
                                            double tol = kIdentityTol);

// Central finite-difference Jacobian of the map z0 -> zh.
Matrix step_jacobian(const dynamics::SchemeSpec& scheme,
                     const dynamics::HamiltonianSystem& system, const Vector& z,
                     double h, double fd_epsilon = 1e-6,
                     const dynamics::SolverOptions& opts = {});

// ||M^T J0 M - J0||_max.
double symplectic_residual(const Matrix& M);

struct EnergyDrift {
    double max_drift;
    double final_drift;
};

EnergyDrift energy_drift(const dynamics::Trajectory& traj,
                         const dynamics::HamiltonianSystem& system);

}  // namespace liouform::diagnostics
