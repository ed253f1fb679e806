#pragma once

// Hamiltonian test systems and the generalized implicit Euler integrator
// zh = z0 + h X_H(P0 z0 + Ph zh), with fixed-point and Newton solvers,
// trajectory generation, and exact step matrices for quadratic energies.

#include <functional>
#include <string>
#include <vector>

#include "liouform/derivation.hpp"
#include "liouform/matrix.hpp"

namespace liouform::dynamics {

struct HamiltonianSystem {
    int n = 0;
    std::string name;
    std::function<double(const Vector&)> energy;
    std::function<Vector(const Vector&)> gradient;
    std::function<Matrix(const Vector&)> hessian;  // may be empty
};

// name in {harmonic, pendulum, kepler, quadratic}. pendulum requires n = 1;
// kepler requires n = 2 and params = {mu} with mu > 0 (default 1); quadratic
// takes the 2n x 2n symmetric matrix row-major in params. Gradients are
// checked against a finite-difference probe of the energy on construction.
HamiltonianSystem builtin_system(const std::string& name, int n,
                                 const std::vector<double>& params = {});

HamiltonianSystem quadratic_system(const Matrix& M);

// X_H(z) = J0 grad H(z).
Vector hamiltonian_vector_field(const HamiltonianSystem& system, const Vector& z);

struct SchemeSpec {
    derivation::ImplicitMapPair map;
    std::string label;
};

// name in {midpoint, euler-a, euler-b, explicit-euler}. euler-b is the
// phi = 0 member (arguments: new position, old momentum), euler-a the
// phi = pi/2 member. explicit-euler (P0 = I, Ph = 0) is the non-symplectic
// reference scheme.
SchemeSpec named_scheme(const std::string& name, int n);

SchemeSpec scheme_from_form(const forms::LiouvillianForm& form,
                            std::string label = "");

enum class SolverMethod { fixed_point, newton };

struct SolverOptions {
    SolverMethod method = SolverMethod::fixed_point;
    double tolerance = 1e-13;  // max-norm residual of the implicit equation
    int max_iterations = 100;
};

struct StepResult {
    Vector z;
    int iterations;
};

// Solves the implicit step equation; the returned state satisfies
// ||zh - z0 - h X_H(P0 z0 + Ph zh)||_max <= opts.tolerance.
// Throws SolverFailureError on non-convergence and UnsupportedMethodError
// for Newton without a Hessian.
StepResult step(const SchemeSpec& scheme, const HamiltonianSystem& system,
                const Vector& z0, double h, const SolverOptions& opts = {});

struct Trajectory {
    double h = 0.0;
    std::vector<Vector> states;           // states[0] is the initial condition
    std::vector<double> energies;
    std::vector<int> solver_iterations;   // 0 for the initial entry
};

struct IntegrationResult {
    Trajectory trajectory;
    bool completed = true;
    std::string error;  // set when the run aborted early
};

// Repeated step; on solver failure returns the partial trajectory with
// completed = false instead of throwing.
IntegrationResult integrate(const SchemeSpec& scheme, const HamiltonianSystem& system,
                            const Vector& z0, double h, int steps,
                            const SolverOptions& opts = {});

// Exact one-step matrix for H = z^T M z / 2:
// (I - h J0 M Ph)^{-1} (I + h J0 M P0). Throws StepSingularError when the
// implicit system matrix is singular.
Matrix linear_step_matrix(const SchemeSpec& scheme, const Matrix& M, double h);

}  // namespace liouform::dynamics
