#include "liouform/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "liouform/diagnostics.hpp"
#include "liouform/dynamics.hpp"
#include "liouform/errors.hpp"
#include "liouform/io.hpp"
#include "liouform/rng.hpp"
#include "liouform/verify.hpp"

namespace liouform::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitSolverFailed = 3;

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidSpecError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (values.empty()) throw InvalidSpecError(std::string(what) + " list is empty");
    return values;
}

Vector to_vector(const std::vector<double>& v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

// Streams to the output path, or stdout for "" / "-".
struct OutputStream {
    explicit OutputStream(const std::string& path) {
        if (!path.empty() && path != "-") {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw InvalidSpecError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& get() { return file ? *file : std::cout; }
    std::unique_ptr<std::ofstream> file;
};

struct FormArgs {
    std::string family;
    std::string form;  // family name or spec file path
    int n = 1;
    std::string phi = "0";
    std::string alpha, beta, gamma;
};

forms::FamilySpec build_spec(const FormArgs& args) {
    forms::FamilySpec spec;
    std::string family_name = args.family;
    if (family_name.empty() && !args.form.empty()) {
        // --form takes either a family name or a JSON spec file.
        try {
            forms::family_from_string(args.form);
            family_name = args.form;
        } catch (const InvalidSpecError&) {
            return io::load_form_spec(args.form);
        }
    }
    if (family_name.empty()) {
        throw InvalidSpecError("no form given: use --family or --form");
    }
    spec.family = forms::family_from_string(family_name);
    spec.n = args.n;
    spec.phi = io::parse_angle(args.phi);
    if (!args.alpha.empty()) spec.alpha = to_vector(parse_number_list(args.alpha, "alpha"));
    if (!args.beta.empty()) spec.beta = to_vector(parse_number_list(args.beta, "beta"));
    if (!args.gamma.empty()) spec.gamma = to_vector(parse_number_list(args.gamma, "gamma"));
    return spec;
}

struct DeriveArgs {
    FormArgs form;
    double tol = kIdentityTol;
    std::string output;
};

int cmd_derive(const DeriveArgs& args) {
    const auto form = forms::make_family_form(build_spec(args.form));
    OutputStream out(args.output);
    out.get() << io::derive_report(form, args.tol).dump(2) << '\n';
    return kExitOk;
}

struct SweepArgs {
    std::string family = "theta_phi";
    int n = 1;
    std::string from = "0";
    std::string to = "2pi";
    int points = 1001;
    int samples = 1000;
    std::uint64_t seed = 0;
    double tol = kIdentityTol;
    std::string output;
};

int cmd_sweep(const SweepArgs& args) {
    OutputStream out(args.output);
    if (args.family == "theta_phi") {
        if (args.points < 1) throw InvalidSpecError("--points must be >= 1");
        const double from = io::parse_angle(args.from);
        const double to = io::parse_angle(args.to);
        std::vector<double> grid(args.points);
        for (int k = 0; k < args.points; ++k) {
            grid[k] = args.points == 1
                          ? from
                          : from + (to - from) * (static_cast<double>(k) / (args.points - 1));
        }
        io::write_theta_sweep_csv(out.get(),
                                  diagnostics::sweep_theta_phi(args.n, grid, args.tol));
        return kExitOk;
    }
    if (args.family == "abc" || args.family == "abc_family") {
        if (args.samples < 1) throw InvalidSpecError("--samples must be >= 1");
        Rng rng(args.seed);
        std::vector<diagnostics::AbcSample> samples(args.samples);
        for (auto& s : samples) {
            s.alpha = rng.uniform_vector(args.n, -1.0, 1.0);
            s.beta = rng.uniform_vector(args.n, -1.0, 1.0);
            s.gamma = rng.uniform_vector(args.n, -1.0, 1.0);
        }
        io::write_abc_sweep_csv(out.get(),
                                diagnostics::classify_abc_plane(args.n, samples, args.tol),
                                args.n, args.tol, "seed=" + std::to_string(args.seed));
        return kExitOk;
    }
    throw InvalidSpecError("sweep family must be theta_phi or abc");
}

struct IntegrateArgs {
    std::string system = "pendulum";
    int n = 0;  // 0: infer from z0
    double mu = 1.0;
    std::string system_matrix;  // JSON file for quadratic
    std::string scheme;
    FormArgs form;
    std::string z0;
    double h = 0.1;
    int steps = 100;
    std::string method = "fixed_point";
    double solver_tol = 1e-13;
    int max_iterations = 100;
    std::string output;
};

int cmd_integrate(const IntegrateArgs& args) {
    if (!(args.h > 0)) throw InvalidSpecError("--h must be positive");
    if (args.steps < 0) throw InvalidSpecError("--steps must be nonnegative");
    const Vector z0 = to_vector(parse_number_list(args.z0, "z0"));
    if (z0.size() % 2 != 0) {
        throw InvalidSpecError("z0 must have even length 2n");
    }
    int n = args.n > 0 ? args.n : static_cast<int>(z0.size()) / 2;
    if (z0.size() != 2 * n) {
        throw InvalidSpecError("z0 length does not match 2n");
    }

    dynamics::HamiltonianSystem system;
    if (args.system == "quadratic" && !args.system_matrix.empty()) {
        std::ifstream in(args.system_matrix);
        if (!in) throw InvalidSpecError("cannot open matrix file '" + args.system_matrix + "'");
        nlohmann::json j;
        in >> j;
        system = dynamics::quadratic_system(io::matrix_from_json(j));
        if (system.n != n) throw InvalidSpecError("quadratic matrix size does not match z0");
    } else {
        std::vector<double> params;
        if (args.system == "kepler") params.push_back(args.mu);
        system = dynamics::builtin_system(args.system, n, params);
    }

    dynamics::SchemeSpec scheme;
    if (!args.scheme.empty()) {
        scheme = dynamics::named_scheme(args.scheme, n);
    } else {
        FormArgs fa = args.form;
        fa.n = n;
        const auto spec = build_spec(fa);
        if (spec.n != n) throw InvalidSpecError("form dimension does not match z0");
        scheme = dynamics::scheme_from_form(forms::make_family_form(spec));
    }

    dynamics::SolverOptions opts;
    opts.tolerance = args.solver_tol;
    opts.max_iterations = args.max_iterations;
    if (args.method == "newton") {
        opts.method = dynamics::SolverMethod::newton;
    } else if (args.method != "fixed_point") {
        throw InvalidSpecError("--method must be fixed_point or newton");
    }

    const auto result = dynamics::integrate(scheme, system, z0, args.h, args.steps, opts);
    OutputStream out(args.output);
    io::write_trajectory_csv(out.get(), result.trajectory, n);
    if (!result.completed) {
        std::cerr << "integration aborted after "
                  << result.trajectory.states.size() - 1 << " steps: " << result.error
                  << " (partial trajectory written)\n";
        return kExitSolverFailed;
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string only;
    double tol = -1.0;  // < 0: use per-check thresholds
};

int cmd_verify(const VerifyArgs& args) {
    verify::VerifyOptions opts;
    if (!args.only.empty()) opts.only = args.only;
    if (args.tol >= 0.0) opts.tol_override = args.tol;
    const auto results = verify::run_checks(opts);
    bool all_passed = true;
    for (const auto& r : results) {
        all_passed = all_passed && r.passed;
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " — " << r.title;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << '\n';
    }
    std::cout << (all_passed ? "verification passed" : "verification FAILED") << " ("
              << results.size() << " checks)\n";
    return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Liouvillian-form toolkit: derive implicit one-step maps from "
                 "constant-coefficient 1-forms, classify their symplecticity, "
                 "and run the induced integrators"};
    app.require_subcommand(1);
    // --h is a step-size option below, so help gets the long form only.
    app.set_help_flag("--help", "print help and exit");

    DeriveArgs derive_args;
    auto* derive = app.add_subcommand("derive", "derive and classify the implicit map of a form");
    derive->add_option("--family", derive_args.form.family, "form family name");
    derive->add_option("--form", derive_args.form.form, "family name or JSON spec file");
    derive->add_option("--n", derive_args.form.n, "degrees of freedom per phase-space copy");
    derive->add_option("--phi", derive_args.form.phi, "angle (accepts pi expressions, e.g. pi/4)");
    derive->add_option("--alpha", derive_args.form.alpha, "comma-separated alpha_i");
    derive->add_option("--beta", derive_args.form.beta, "comma-separated beta_i");
    derive->add_option("--gamma", derive_args.form.gamma, "comma-separated gamma_i");
    derive->add_option("--tol", derive_args.tol, "classification tolerance");
    derive->add_option("--output,-o", derive_args.output, "output path (default stdout)");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "classify a family over a parameter grid or sample set");
    sweep->add_option("--family", sweep_args.family, "theta_phi or abc");
    sweep->add_option("--n", sweep_args.n, "degrees of freedom");
    sweep->add_option("--from", sweep_args.from, "grid start angle");
    sweep->add_option("--to", sweep_args.to, "grid end angle");
    sweep->add_option("--points", sweep_args.points, "grid point count");
    sweep->add_option("--samples", sweep_args.samples, "random sample count (abc)");
    sweep->add_option("--seed", sweep_args.seed, "random seed (abc)");
    sweep->add_option("--tol", sweep_args.tol, "classification tolerance");
    sweep->add_option("--output,-o", sweep_args.output, "output path (default stdout)");

    IntegrateArgs integrate_args;
    auto* integrate = app.add_subcommand("integrate", "run a one-step scheme on a test system");
    integrate->set_help_flag("--help", "print help and exit");
    integrate->add_option("--system", integrate_args.system,
                          "harmonic, pendulum, kepler, or quadratic");
    integrate->add_option("--n", integrate_args.n, "degrees of freedom (default: from z0)");
    integrate->add_option("--mu", integrate_args.mu, "kepler gravitational parameter");
    integrate->add_option("--system-matrix", integrate_args.system_matrix,
                          "JSON matrix file for the quadratic system");
    integrate->add_option("--scheme", integrate_args.scheme,
                          "midpoint, euler-a, euler-b, or explicit-euler");
    integrate->add_option("--form", integrate_args.form.form, "family name or JSON spec file");
    integrate->add_option("--phi", integrate_args.form.phi, "angle for theta_phi forms");
    integrate->add_option("--alpha", integrate_args.form.alpha, "comma-separated alpha_i");
    integrate->add_option("--beta", integrate_args.form.beta, "comma-separated beta_i");
    integrate->add_option("--gamma", integrate_args.form.gamma, "comma-separated gamma_i");
    integrate->add_option("--z0", integrate_args.z0, "initial state, comma-separated")->required();
    integrate->add_option("--h", integrate_args.h, "time step")->required();
    integrate->add_option("--steps", integrate_args.steps, "step count");
    integrate->add_option("--method", integrate_args.method, "fixed_point or newton");
    integrate->add_option("--solver-tol", integrate_args.solver_tol, "implicit solver tolerance");
    integrate->add_option("--max-iterations", integrate_args.max_iterations,
                          "implicit solver iteration cap");
    integrate->add_option("--output,-o", integrate_args.output, "output path (default stdout)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "run the reproduction suite");
    verify_cmd->add_option("--only", verify_args.only, "run a single check by id");
    verify_cmd->add_option("--tol", verify_args.tol, "override all upper-bound thresholds");

    std::vector<const char*> argv;
    argv.push_back("liouform");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (derive->parsed()) return cmd_derive(derive_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (integrate->parsed()) return cmd_integrate(integrate_args);
        if (verify_cmd->parsed()) return cmd_verify(verify_args);
    } catch (const SolverFailureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace liouform::cli
