#include "liouform/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "liouform/canonical.hpp"
#include "liouform/errors.hpp"

namespace liouform::diagnostics {

namespace {

int sweep_thread_count(std::size_t work_items) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("LIOUFORM_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(work_items, 1)));
}

// Static partition; records land at their index, so results are
// order-deterministic regardless of thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int threads = sweep_thread_count(count);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

SweepRecord record_for(const forms::LiouvillianForm& form,
                       std::vector<double> parameters, double tol) {
    const auto rep = derivation::classify(form, tol);
    return {std::move(parameters), rep.identity_residual, rep.hamiltonian_residual,
            rep.verdict, rep.b};
}

}  // namespace

std::vector<SweepRecord> sweep_theta_phi(int n, std::vector<double> grid, double tol) {
    if (n < 1) throw InvalidDimensionError("sweep dimension n must be >= 1");
    if (grid.empty()) throw InvalidSpecError("sweep grid must be nonempty");
    for (double phi : grid) {
        if (!std::isfinite(phi)) throw InvalidSpecError("sweep grid has a non-finite angle");
    }
    // The special parameters are evaluated even when the grid steps over
    // them, as long as they lie inside the swept interval.
    const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
    const double lo = *lo_it, hi = *hi_it;
    for (double exact : {0.0, M_PI / 4.0, M_PI / 2.0}) {
        if (exact >= lo && exact <= hi &&
            std::find(grid.begin(), grid.end(), exact) == grid.end()) {
            grid.push_back(exact);
        }
    }
    std::vector<SweepRecord> records(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        forms::FamilySpec spec;
        spec.family = forms::Family::theta_phi;
        spec.n = n;
        spec.phi = grid[i];
        records[i] = record_for(forms::make_family_form(spec), {grid[i]}, tol);
    });
    return records;
}

std::vector<SweepRecord> classify_abc_plane(int n, const std::vector<AbcSample>& samples,
                                            double tol) {
    if (n < 1) throw InvalidDimensionError("sweep dimension n must be >= 1");
    if (samples.empty()) throw InvalidSpecError("abc sample list must be nonempty");
    // Arity is checked before the parallel region; workers must not throw.
    for (const auto& s : samples) {
        if (s.alpha.size() != n || s.beta.size() != n || s.gamma.size() != n) {
            throw InvalidSpecError("abc sample vectors must all have length n");
        }
        if (!all_finite(s.alpha) || !all_finite(s.beta) || !all_finite(s.gamma)) {
            throw InvalidSpecError("abc sample has non-finite entries");
        }
    }
    std::vector<SweepRecord> records(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        forms::FamilySpec spec;
        spec.family = forms::Family::abc_family;
        spec.n = n;
        spec.alpha = samples[i].alpha;
        spec.beta = samples[i].beta;
        spec.gamma = samples[i].gamma;
        std::vector<double> params;
        params.reserve(3 * n);
        for (int k = 0; k < n; ++k) params.push_back(spec.alpha[k]);
        for (int k = 0; k < n; ++k) params.push_back(spec.beta[k]);
        for (int k = 0; k < n; ++k) params.push_back(spec.gamma[k]);
        records[i] = record_for(forms::make_family_form(spec), std::move(params), tol);
    });
    return records;
}

Matrix step_jacobian(const dynamics::SchemeSpec& scheme,
                     const dynamics::HamiltonianSystem& system, const Vector& z,
                     double h, double fd_epsilon, const dynamics::SolverOptions& opts) {
    if (!(fd_epsilon > 0)) throw InvalidSpecError("fd_epsilon must be positive");
    const int m = static_cast<int>(z.size());
    Matrix jac(m, m);
    for (int j = 0; j < m; ++j) {
        Vector zp = z, zm = z;
        zp[j] += fd_epsilon;
        zm[j] -= fd_epsilon;
        const Vector fp = dynamics::step(scheme, system, zp, h, opts).z;
        const Vector fm = dynamics::step(scheme, system, zm, h, opts).z;
        jac.col(j) = (fp - fm) / (2.0 * fd_epsilon);
    }
    return jac;
}

double symplectic_residual(const Matrix& M) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0) {
        throw InvalidDimensionError("symplectic residual needs a square matrix of even size");
    }
    const Matrix j = canonical::j0(static_cast<int>(M.rows()) / 2);
    return max_abs(M.transpose() * j * M - j);
}

EnergyDrift energy_drift(const dynamics::Trajectory& traj,
                         const dynamics::HamiltonianSystem& system) {
    if (traj.states.empty()) throw InvalidSpecError("trajectory is empty");
    const double h0 = system.energy(traj.states.front());
    double max_drift = 0.0;
    for (const Vector& z : traj.states) {
        max_drift = std::max(max_drift, std::abs(system.energy(z) - h0));
    }
    const double final_drift = std::abs(system.energy(traj.states.back()) - h0);
    return {max_drift, final_drift};
}

}  // namespace liouform::diagnostics
