#include "liouform/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "liouform/errors.hpp"

namespace liouform::io {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) {
        throw InvalidSpecError("matrix must be a nonempty array of rows");
    }
    const auto nrows = rows.size();
    const auto ncols = rows[0].is_array() ? rows[0].size() : 0;
    if (ncols == 0) throw InvalidSpecError("matrix rows must be nonempty arrays");
    Matrix m(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(ncols));
    for (std::size_t i = 0; i < nrows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != ncols) {
            throw InvalidSpecError("matrix rows must all have the same length");
        }
        for (std::size_t j = 0; j < ncols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
        }
    }
    return m;
}

json report_to_json(const derivation::SymplecticityReport& rep) {
    return json{{"n", rep.n},
                {"P0", matrix_to_json(rep.map.P0)},
                {"Ph", matrix_to_json(rep.map.Ph)},
                {"identity_residual", rep.identity_residual},
                {"b", matrix_to_json(rep.b)},
                {"hamiltonian_residual", rep.hamiltonian_residual},
                {"verdict", derivation::to_string(rep.verdict)},
                {"rho_is_zero", rep.rho_is_zero},
                {"tol", rep.tol}};
}

json derive_report(const forms::LiouvillianForm& form, double tol) {
    json j = report_to_json(derivation::classify(form, tol));
    j["kernel_dimension"] = derivation::kernel_basis(form, tol).size();
    j["exactness_residual"] = form.exactness_residual();
    j["is_liouvillian"] = form.is_liouvillian();
    return j;
}

forms::FamilySpec form_spec_from_json(const json& j) {
    forms::FamilySpec spec;
    if (!j.contains("n") || !j.contains("family")) {
        throw InvalidSpecError("form spec needs 'n' and 'family'");
    }
    spec.n = j.at("n").get<int>();
    spec.family = forms::family_from_string(j.at("family").get<std::string>());
    const json params = j.value("params", json::object());
    auto read_vec = [&](const char* name) {
        if (!params.contains(name)) {
            throw InvalidSpecError(std::string("form spec params missing '") + name + "'");
        }
        const auto& arr = params.at(name);
        Vector v(static_cast<Eigen::Index>(arr.size()));
        for (std::size_t i = 0; i < arr.size(); ++i) {
            v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
        }
        return v;
    };
    switch (spec.family) {
        case forms::Family::theta_phi:
            if (params.contains("phi") && params.at("phi").is_string()) {
                spec.phi = parse_angle(params.at("phi").get<std::string>());
            } else {
                spec.phi = params.value("phi", 0.0);
            }
            break;
        case forms::Family::abc_family:
            spec.alpha = read_vec("alpha");
            spec.beta = read_vec("beta");
            spec.gamma = read_vec("gamma");
            break;
        case forms::Family::midpoint_family:
            spec.beta = read_vec("beta");
            break;
        case forms::Family::custom_matrix:
            if (!params.contains("matrix")) {
                throw InvalidSpecError("custom_matrix spec needs params.matrix");
            }
            spec.matrix = matrix_from_json(params.at("matrix"));
            break;
        default:
            break;
    }
    return spec;
}

forms::FamilySpec load_form_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpecError("cannot open form spec file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidSpecError("form spec '" + path + "' is not valid JSON: " + e.what());
    }
    return form_spec_from_json(j);
}

double parse_angle(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    if (s.empty()) throw InvalidSpecError("empty angle");
    double sign = 1.0;
    if (s[0] == '+' || s[0] == '-') {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
    }
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw InvalidSpecError("trailing characters in angle '" + text + "'");
            return sign * v;
        } catch (const InvalidSpecError&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidSpecError("cannot parse angle '" + text + "'");
        }
    }
    std::string coef_s = s.substr(0, pos);
    const std::string rest = s.substr(pos + 2);
    if (!coef_s.empty() && coef_s.back() == '*') coef_s.pop_back();
    double coef = 1.0;
    double div = 1.0;
    try {
        if (!coef_s.empty()) coef = std::stod(coef_s);
        if (!rest.empty()) {
            if (rest[0] != '/') throw InvalidSpecError("cannot parse angle '" + text + "'");
            div = std::stod(rest.substr(1));
        }
    } catch (const InvalidSpecError&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidSpecError("cannot parse angle '" + text + "'");
    }
    if (div == 0.0) throw InvalidSpecError("zero divisor in angle '" + text + "'");
    return sign * coef * M_PI / div;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const dynamics::Trajectory& traj, int n) {
    out << "step,t";
    for (int i = 1; i <= n; ++i) out << ",q" << i;
    for (int i = 1; i <= n; ++i) out << ",p" << i;
    out << ",H,deltaH\n";
    const double h0 = traj.energies.empty() ? 0.0 : traj.energies.front();
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        out << k << ',' << format_double(static_cast<double>(k) * traj.h);
        const Vector& z = traj.states[k];
        for (int i = 0; i < 2 * n; ++i) out << ',' << format_double(z[i]);
        out << ',' << format_double(traj.energies[k]) << ','
            << format_double(traj.energies[k] - h0) << '\n';
    }
}

void write_theta_sweep_csv(std::ostream& out,
                           const std::vector<diagnostics::SweepRecord>& records) {
    out << "phi,identity_residual,hamiltonian_residual,verdict\n";
    for (const auto& r : records) {
        out << format_double(r.parameters.at(0)) << ','
            << format_double(r.identity_residual) << ','
            << format_double(r.hamiltonian_residual) << ','
            << derivation::to_string(r.verdict) << '\n';
    }
}

void write_abc_sweep_csv(std::ostream& out,
                         const std::vector<diagnostics::SweepRecord>& records, int n,
                         double bg_tol, const std::string& header_comment) {
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    for (int i = 1; i <= n; ++i) out << "alpha" << i << ',';
    for (int i = 1; i <= n; ++i) out << "beta" << i << ',';
    for (int i = 1; i <= n; ++i) out << "gamma" << i << ',';
    out << "identity_residual,hamiltonian_residual,verdict,bg_predicate\n";
    for (const auto& r : records) {
        double worst_bg = 0.0;
        for (int i = 0; i < n; ++i) {
            worst_bg = std::max(worst_bg,
                                std::abs(r.parameters[n + i] + r.parameters[2 * n + i]));
        }
        for (double p : r.parameters) out << format_double(p) << ',';
        out << format_double(r.identity_residual) << ','
            << format_double(r.hamiltonian_residual) << ','
            << derivation::to_string(r.verdict) << ','
            << (worst_bg <= bg_tol ? 1 : 0) << '\n';
    }
}

}  // namespace liouform::io
