#include "liouform/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "liouform/canonical.hpp"
#include "liouform/derivation.hpp"
#include "liouform/diagnostics.hpp"
#include "liouform/dynamics.hpp"
#include "liouform/errors.hpp"
#include "liouform/forms.hpp"
#include "liouform/rng.hpp"

namespace liouform::verify {

namespace {

using derivation::Verdict;
using dynamics::SolverOptions;

struct Ctx {
    // Returns the check threshold, or the override when one was given.
    double tol(double pinned) const {
        return override_tol ? *override_tol : pinned;
    }
    std::optional<double> override_tol;
};

std::vector<double> linspace(double from, double to, int points) {
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = from;
        return g;
    }
    for (int k = 0; k < points; ++k) {
        g[k] = from + (to - from) * (static_cast<double>(k) / (points - 1));
    }
    return g;
}

forms::LiouvillianForm theta(int n, double phi) {
    forms::FamilySpec spec;
    spec.family = forms::Family::theta_phi;
    spec.n = n;
    spec.phi = phi;
    return forms::make_family_form(spec);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// --- 1. Null-map derivation and the induced identity scheme ----------------

CheckResult check_proposition1(const Ctx& ctx) {
    CheckResult r{"proposition1", "Poincare form derives to the null map", true, ""};
    for (int n : {1, 2, 3}) {
        forms::FamilySpec spec;
        spec.family = forms::Family::poincare;
        spec.n = n;
        const auto rep = derivation::classify(forms::make_family_form(spec));
        const double p0 = max_abs(rep.map.P0), ph = max_abs(rep.map.Ph);
        if (p0 != 0.0 || ph != 0.0 || rep.verdict != Verdict::null_map) {
            r.passed = false;
            r.detail = "n=" + std::to_string(n) + ": ||P0||=" + fmt(p0) +
                       " ||Ph||=" + fmt(ph) + " verdict=" + derivation::to_string(rep.verdict);
            return r;
        }
    }
    const auto system = dynamics::builtin_system("pendulum", 1);
    forms::FamilySpec spec;
    spec.family = forms::Family::poincare;
    spec.n = 1;
    const auto scheme = dynamics::scheme_from_form(forms::make_family_form(spec), "poincare-identity");
    Rng rng(101);
    double worst_change = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Vector z = rng.uniform_vector(2, -1.0, 1.0);
        for (int k = 0; k < 100; ++k) {
            const Vector znext = dynamics::step(scheme, system, z, 0.1).z;
            worst_change = std::max(worst_change, max_abs(Vector(znext - z)));
            z = znext;
        }
    }
    if (worst_change > ctx.tol(1e-15)) {
        r.passed = false;
        r.detail = "identity scheme moved a state by " + fmt(worst_change);
        return r;
    }
    r.detail = "P0 = Ph = 0 exactly for n in {1,2,3}; max per-step change " + fmt(worst_change);
    return r;
}

// --- 2. phi-classification over [0, pi/2] ----------------------------------

CheckResult check_theorem1(const Ctx& ctx) {
    CheckResult r{"theorem1", "theta_phi symplectic exactly at phi in {0, pi/2}", true, ""};
    const double half_pi = M_PI / 2.0;
    auto records = diagnostics::sweep_theta_phi(1, linspace(0.0, half_pi, 10001),
                                                ctx.tol(1e-12));
    std::vector<double> symplectic_phis;
    for (const auto& rec : records) {
        if (rec.verdict == Verdict::symplectic) symplectic_phis.push_back(rec.parameters[0]);
    }
    std::sort(symplectic_phis.begin(), symplectic_phis.end());
    if (symplectic_phis != std::vector<double>{0.0, half_pi}) {
        r.passed = false;
        r.detail = "symplectic set has " + std::to_string(symplectic_phis.size()) +
                   " members (expected exactly {0, pi/2})";
        return r;
    }
    Matrix b0_target = Matrix::Zero(2, 2);
    b0_target(0, 0) = 0.5;
    b0_target(1, 1) = -0.5;
    double worst_b = 0.0;
    for (const auto& rec : records) {
        if (rec.parameters[0] == 0.0) {
            worst_b = std::max(worst_b, max_abs(Matrix(rec.b - b0_target)));
        } else if (rec.parameters[0] == half_pi) {
            worst_b = std::max(worst_b, max_abs(Matrix(rec.b + b0_target)));
        }
    }
    if (worst_b > ctx.tol(1e-14)) {
        r.passed = false;
        r.detail = "endpoint b off by " + fmt(worst_b);
        return r;
    }
    r.detail = "10001-point sweep; endpoint b matches diag(1,-1)/2 within " + fmt(worst_b);
    return r;
}

// --- 3. f/g trigonometric identities ----------------------------------------

CheckResult check_trig_identities(const Ctx& ctx) {
    CheckResult r{"trig-identities", "pipeline weights satisfy the f/g identities", true, ""};
    const double tol = ctx.tol(1e-14);
    double worst = 0.0;
    for (double phi : linspace(0.0, 2.0 * M_PI, 1000)) {
        const double c = std::cos(phi), s = std::sin(phi);
        const double f = -s * (c - s), g = c * (c - s);
        worst = std::max(worst, std::abs(f + g - (1.0 - std::sin(2.0 * phi))));
        worst = std::max(worst, std::abs(f - g + std::cos(2.0 * phi)));
        const auto map = derivation::implicit_map(theta(1, phi));
        Matrix p0(2, 2), ph(2, 2);
        p0 << f, 0, 0, g;
        ph << g, 0, 0, f;
        worst = std::max(worst, max_abs(Matrix(map.P0 - p0)));
        worst = std::max(worst, max_abs(Matrix(map.Ph - ph)));
    }
    r.passed = worst <= tol;
    r.detail = "max deviation " + fmt(worst) + " (bound " + fmt(tol) + ")";
    return r;
}

// --- 4. Midpoint family independence of beta --------------------------------

CheckResult check_theorem2(const Ctx& ctx) {
    CheckResult r{"theorem2", "midpoint family derives P0 = Ph = I/2 for every beta", true, ""};
    Rng rng(404);
    double worst = 0.0;
    for (int n : {1, 2, 5}) {
        const Matrix half = 0.5 * Matrix::Identity(2 * n, 2 * n);
        for (int trial = 0; trial < 100; ++trial) {
            forms::FamilySpec spec;
            spec.family = forms::Family::midpoint_family;
            spec.n = n;
            spec.beta = rng.uniform_vector(n, -1.0, 1.0);
            const auto map = derivation::implicit_map(forms::make_family_form(spec));
            worst = std::max(worst, max_abs(Matrix(map.P0 - half)));
            worst = std::max(worst, max_abs(Matrix(map.Ph - half)));
        }
    }
    if (worst > ctx.tol(1e-14)) {
        r.passed = false;
        r.detail = "max deviation from I/2 is " + fmt(worst);
        return r;
    }
    // Executed scheme versus the canonical mid-point scheme, stepwise.
    const auto system = dynamics::builtin_system("pendulum", 1);
    forms::FamilySpec spec;
    spec.family = forms::Family::midpoint_family;
    spec.n = 1;
    spec.beta = rng.uniform_vector(1, -1.0, 1.0);
    const auto beta_scheme = dynamics::scheme_from_form(forms::make_family_form(spec));
    const auto mid_scheme = dynamics::named_scheme("midpoint", 1);
    SolverOptions opts;
    opts.tolerance = 1e-14;
    Vector za(2), zb(2);
    za << 1.0, 0.5;
    zb = za;
    double worst_state = 0.0;
    for (int k = 0; k < 1000; ++k) {
        za = dynamics::step(beta_scheme, system, za, 0.01, opts).z;
        zb = dynamics::step(mid_scheme, system, zb, 0.01, opts).z;
        worst_state = std::max(worst_state, max_abs(Vector(za - zb)));
    }
    if (worst_state > ctx.tol(1e-12)) {
        r.passed = false;
        r.detail = "executed schemes diverge by " + fmt(worst_state);
        return r;
    }
    r.detail = "map deviation " + fmt(worst) + "; stepwise deviation " + fmt(worst_state);
    return r;
}

// --- 5. The beta + gamma = 0 plane ------------------------------------------

CheckResult check_abc_plane(const Ctx& ctx) {
    CheckResult r{"abc-plane", "symplectic verdict iff max|beta_i + gamma_i| <= tol", true, ""};
    const int n = 2;
    const double tol = ctx.tol(1e-12);
    Rng rng(505);
    std::vector<diagnostics::AbcSample> samples(1000);
    for (auto& s : samples) {
        s.alpha = rng.uniform_vector(n, -1.0, 1.0);
        s.beta = rng.uniform_vector(n, -1.0, 1.0);
        s.gamma = rng.uniform_vector(n, -1.0, 1.0);
    }
    const auto records = diagnostics::classify_abc_plane(n, samples, tol);
    int mismatches = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double worst_bg = 0.0;
        for (int k = 0; k < n; ++k) {
            worst_bg = std::max(worst_bg, std::abs(samples[i].beta[k] + samples[i].gamma[k]));
        }
        const bool predicted = worst_bg <= tol;
        const bool classified = records[i].verdict == Verdict::symplectic;
        if (predicted != classified) ++mismatches;
    }
    // Constructed on-plane samples keep the equivalence two-sided.
    std::vector<diagnostics::AbcSample> on_plane(50);
    for (auto& s : on_plane) {
        s.alpha = rng.uniform_vector(n, -1.0, 1.0);
        s.beta = rng.uniform_vector(n, -1.0, 1.0);
        s.gamma = -s.beta;
    }
    for (const auto& rec : diagnostics::classify_abc_plane(n, on_plane, tol)) {
        if (rec.verdict != Verdict::symplectic) ++mismatches;
    }
    r.passed = mismatches == 0;
    r.detail = std::to_string(mismatches) + " mismatches over 1050 samples";
    return r;
}

// --- 6. Pullback path through the tautological form --------------------------

CheckResult check_pullback_path(const Ctx& ctx) {
    CheckResult r{"pullback-path", "psi_phi pullback of the tautological form is theta_phi", true, ""};
    const auto taut = forms::tautological_product_form(1);
    double worst = 0.0;
    for (double phi : linspace(0.0, 2.0 * M_PI, 100)) {
        const auto pulled = forms::pullback_form(forms::psi_matrix(1, phi), taut);
        worst = std::max(worst, max_abs(Matrix(pulled.matrix() - theta(1, phi).matrix())));
    }
    if (worst > ctx.tol(1e-13)) {
        r.passed = false;
        r.detail = "pullback deviates from the family by " + fmt(worst);
        return r;
    }
    forms::FamilySpec poi;
    poi.family = forms::Family::poincare;
    poi.n = 1;
    const double dev = max_abs(Matrix(theta(1, M_PI / 4.0).matrix() -
                                      forms::make_family_form(poi).matrix()));
    if (dev > ctx.tol(1e-15)) {
        r.passed = false;
        r.detail = "theta(pi/4) deviates from the Poincare matrix by " + fmt(dev);
        return r;
    }
    r.detail = "grid deviation " + fmt(worst) + "; theta(pi/4) vs Poincare " + fmt(dev);
    return r;
}

// --- 7. Matricial decomposition ----------------------------------------------

CheckResult check_decomposition(const Ctx& ctx) {
    CheckResult r{"decomposition", "A = Jtilde/2 + cos(2phi)/2 K1 + sin(2phi)/2 K2", true, ""};
    const Matrix jt = canonical::jtilde(1);
    const Matrix k1 = forms::k1_matrix(1);
    const Matrix k2 = forms::k2_matrix(1);
    double worst = 0.0;
    for (double phi : linspace(0.0, 2.0 * M_PI, 100)) {
        const Matrix rec = 0.5 * jt + 0.5 * std::cos(2 * phi) * k1 + 0.5 * std::sin(2 * phi) * k2;
        worst = std::max(worst, max_abs(Matrix(theta(1, phi).matrix() - rec)));
        const auto dec = forms::matricial_decomposition(theta(1, phi));
        worst = std::max(worst, max_abs(Matrix(dec.antisymmetric - 0.5 * jt)));
        worst = std::max(worst,
                         max_abs(Matrix(dec.antisymmetric + dec.symmetric - theta(1, phi).matrix())));
    }
    r.passed = worst <= ctx.tol(1e-14);
    r.detail = "max reconstruction deviation " + fmt(worst);
    return r;
}

// --- 8. Rotation lemma ---------------------------------------------------------

CheckResult check_rotation(const Ctx& ctx) {
    CheckResult r{"rotation-lemma", "R_phi is orthogonal and Jtilde-preserving", true, ""};
    double worst = 0.0;
    for (int n : {1, 2}) {
        for (double phi : linspace(0.0, 2.0 * M_PI, 1000)) {
            const auto res = canonical::is_symplectic_rotation(forms::rotation_matrix(n, phi), n);
            worst = std::max({worst, res.orthogonality_residual, res.symplecticity_residual});
        }
    }
    r.passed = worst <= ctx.tol(1e-13);
    r.detail = "max residual " + fmt(worst);
    return r;
}

// --- 9. Exact linear symplecticity + declared negative control ----------------

CheckResult check_linear_symplecticity(const Ctx& ctx) {
    CheckResult r{"linear-symplecticity", "symplectic schemes give exactly symplectic linear steps", true, ""};
    Rng rng(909);
    double worst = 0.0;
    for (int n : {1, 2}) {
        const std::vector<dynamics::SchemeSpec> schemes = {
            dynamics::named_scheme("midpoint", n),
            dynamics::named_scheme("euler-b", n),
            dynamics::named_scheme("euler-a", n),
        };
        for (int trial = 0; trial < 10; ++trial) {
            const Matrix M = rng.symmetric_matrix(2 * n, -1.0, 1.0);
            for (double h : {1e-3, 1e-2, 1e-1, 0.5}) {
                for (const auto& scheme : schemes) {
                    worst = std::max(worst, diagnostics::symplectic_residual(
                                                dynamics::linear_step_matrix(scheme, M, h)));
                }
            }
        }
    }
    if (worst > ctx.tol(1e-12)) {
        r.passed = false;
        r.detail = "positive schemes reach residual " + fmt(worst);
        return r;
    }
    // Declared negative control: theta(pi/3), M = I, h = 0.1 with expected
    // residual >= 1e-3. The measured step map is exactly symplectic (the
    // scheme's defect is consistency, not symplecticity), so this assertion
    // fails; it is kept as stated rather than weakened. See README.
    const auto bad_scheme = dynamics::scheme_from_form(theta(1, M_PI / 3.0), "theta-pi-3");
    const double neg = diagnostics::symplectic_residual(
        dynamics::linear_step_matrix(bad_scheme, Matrix::Identity(2, 2), 0.1));
    const double consistency = max_abs(
        Matrix(bad_scheme.map.P0 + bad_scheme.map.Ph - Matrix::Identity(2, 2)));
    if (!(neg >= 1e-3)) {
        r.passed = false;
        r.detail = "positive residual " + fmt(worst) + "; negative control expected >= 1e-3 but measured " +
                   fmt(neg) + " (scheme is a symplectic map; its consistency defect is " +
                   fmt(consistency) + ")";
        return r;
    }
    r.detail = "max residual " + fmt(worst) + "; negative control " + fmt(neg);
    return r;
}

// --- 10. Finite-difference Jacobians on the pendulum ---------------------------

CheckResult check_jacobian(const Ctx& ctx) {
    CheckResult r{"jacobian-check", "step Jacobians of symplectic schemes preserve J0", true, ""};
    const auto system = dynamics::builtin_system("pendulum", 1);
    Rng rng(1010);
    double worst = 0.0;
    for (const char* name : {"midpoint", "euler-b", "euler-a"}) {
        const auto scheme = dynamics::named_scheme(name, 1);
        for (int trial = 0; trial < 10; ++trial) {
            Vector z(2);
            z << rng.uniform(-1.2, 1.2), rng.uniform(-1.0, 1.0);
            const Matrix jac = diagnostics::step_jacobian(scheme, system, z, 0.01, 1e-6);
            worst = std::max(worst, diagnostics::symplectic_residual(jac));
        }
    }
    r.passed = worst <= ctx.tol(1e-5);
    r.detail = "max residual " + fmt(worst);
    return r;
}

// --- 11. Long-run energy behaviour ---------------------------------------------

CheckResult check_energy(const Ctx& ctx) {
    CheckResult r{"energy-behavior", "midpoint conserves; explicit Euler drifts", true, ""};
    SolverOptions opts;
    opts.tolerance = 1e-14;
    const auto harmonic = dynamics::builtin_system("harmonic", 1);
    const auto pendulum = dynamics::builtin_system("pendulum", 1);
    const auto midpoint = dynamics::named_scheme("midpoint", 1);
    Vector z0(2);
    z0 << 1.0, 0.0;

    const auto run_h = dynamics::integrate(midpoint, harmonic, z0, 0.1, 100000, opts);
    if (!run_h.completed) {
        r.passed = false;
        r.detail = "harmonic run aborted: " + run_h.error;
        return r;
    }
    const auto drift_h = diagnostics::energy_drift(run_h.trajectory, harmonic);
    if (drift_h.max_drift > ctx.tol(1e-8)) {
        r.passed = false;
        r.detail = "harmonic max drift " + fmt(drift_h.max_drift);
        return r;
    }

    Vector zp(2);
    zp << 1.0, 0.5;
    const auto run_p = dynamics::integrate(midpoint, pendulum, zp, 0.1, 100000, opts);
    if (!run_p.completed) {
        r.passed = false;
        r.detail = "pendulum run aborted: " + run_p.error;
        return r;
    }
    const auto drift_p = diagnostics::energy_drift(run_p.trajectory, pendulum);
    double early_max = 0.0;
    const double h0 = run_p.trajectory.energies.front();
    for (int k = 0; k <= 1000; ++k) {
        early_max = std::max(early_max, std::abs(run_p.trajectory.energies[k] - h0));
    }
    if (drift_p.max_drift > ctx.tol(1e-2) || drift_p.final_drift > 2.0 * early_max) {
        r.passed = false;
        r.detail = "pendulum drift max " + fmt(drift_p.max_drift) + " final " +
                   fmt(drift_p.final_drift) + " early-max " + fmt(early_max);
        return r;
    }

    const auto euler = dynamics::named_scheme("explicit-euler", 1);
    const auto run_e = dynamics::integrate(euler, harmonic, z0, 0.1, 1000, opts);
    const auto drift_e = diagnostics::energy_drift(run_e.trajectory, harmonic);
    if (!(drift_e.max_drift > 0.1)) {
        r.passed = false;
        r.detail = "explicit Euler drift only " + fmt(drift_e.max_drift);
        return r;
    }
    r.detail = "harmonic " + fmt(drift_h.max_drift) + "; pendulum " + fmt(drift_p.max_drift) +
               " (final " + fmt(drift_p.final_drift) + "); euler control " + fmt(drift_e.max_drift);
    return r;
}

// --- 12. Full-circle extension of the phi sweep ---------------------------------

CheckResult check_full_circle(const Ctx& ctx) {
    CheckResult r{"full-circle", "symplectic set on [0, 2pi] sits at multiples of pi/2", true, ""};
    const auto records = diagnostics::sweep_theta_phi(1, linspace(0.0, 2.0 * M_PI, 10001),
                                                      ctx.tol(1e-12));
    const std::vector<double> roots = {0.0, M_PI / 2.0, M_PI, 1.5 * M_PI, 2.0 * M_PI};
    int symplectic_count = 0;
    for (const auto& rec : records) {
        const double phi = rec.parameters[0];
        const double sin2 = std::abs(std::sin(2.0 * phi));
        const bool near_root = sin2 <= ctx.tol(1e-10);
        const bool classified = rec.verdict == Verdict::symplectic;
        if (classified != near_root) {
            r.passed = false;
            r.detail = "phi=" + fmt(phi) + " classified=" + (classified ? "sym" : "non") +
                       " but |sin 2phi|=" + fmt(sin2);
            return r;
        }
        if (classified) {
            ++symplectic_count;
            double dist = 1e300;
            for (double root : roots) dist = std::min(dist, std::abs(phi - root));
            if (dist > 1e-3) {
                r.passed = false;
                r.detail = "symplectic point phi=" + fmt(phi) + " far from pi/2 multiples";
                return r;
            }
        }
    }
    if (symplectic_count < 5) {
        r.passed = false;
        r.detail = "only " + std::to_string(symplectic_count) + " symplectic grid points";
        return r;
    }
    r.detail = std::to_string(symplectic_count) + " symplectic points, all at pi/2 multiples";
    return r;
}

}  // namespace

std::vector<std::string> check_ids() {
    return {"proposition1", "theorem1", "trig-identities", "theorem2",
            "abc-plane", "pullback-path", "decomposition", "rotation-lemma",
            "linear-symplecticity", "jacobian-check", "energy-behavior", "full-circle"};
}

std::vector<CheckResult> run_checks(const VerifyOptions& opts) {
    const Ctx ctx{opts.tol_override};
    using CheckFn = std::function<CheckResult(const Ctx&)>;
    const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"proposition1", check_proposition1},
        {"theorem1", check_theorem1},
        {"trig-identities", check_trig_identities},
        {"theorem2", check_theorem2},
        {"abc-plane", check_abc_plane},
        {"pullback-path", check_pullback_path},
        {"decomposition", check_decomposition},
        {"rotation-lemma", check_rotation},
        {"linear-symplecticity", check_linear_symplecticity},
        {"jacobian-check", check_jacobian},
        {"energy-behavior", check_energy},
        {"full-circle", check_full_circle},
    };
    std::vector<CheckResult> results;
    bool matched = false;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& [id, fn] = checks[i];
        if (opts.only && *opts.only != id && *opts.only != "c" + std::to_string(i + 1)) {
            continue;
        }
        matched = true;
        try {
            results.push_back(fn(ctx));
        } catch (const std::exception& e) {
            results.push_back({id, "check aborted", false, e.what()});
        }
    }
    if (opts.only && !matched) {
        throw InvalidSpecError("unknown check id '" + *opts.only + "'");
    }
    return results;
}

}  // namespace liouform::verify
