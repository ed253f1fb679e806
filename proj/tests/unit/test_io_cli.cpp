#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "liouform/canonical.hpp"
#include "liouform/cli.hpp"
#include "liouform/dynamics.hpp"
#include "liouform/errors.hpp"
#include "liouform/forms.hpp"
#include "liouform/io.hpp"

using namespace liouform;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("liouform_test_" + name);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("angle parsing") {
    CHECK(io::parse_angle("pi/4") == M_PI / 4.0);
    CHECK(io::parse_angle("pi/2") == M_PI / 2.0);
    CHECK(io::parse_angle("pi") == M_PI);
    CHECK(io::parse_angle("2pi") == 2.0 * M_PI);
    CHECK(io::parse_angle("2*pi") == 2.0 * M_PI);
    CHECK(io::parse_angle("3pi/2") == doctest::Approx(1.5 * M_PI).epsilon(1e-16));
    CHECK(io::parse_angle("-pi/6") == doctest::Approx(-M_PI / 6.0));
    CHECK(io::parse_angle("0.75") == 0.75);
    CHECK(io::parse_angle(" 1e-3 ") == 1e-3);
    CHECK_THROWS_AS(io::parse_angle("pie"), InvalidSpecError);
    CHECK_THROWS_AS(io::parse_angle("pi/0"), InvalidSpecError);
    CHECK_THROWS_AS(io::parse_angle(""), InvalidSpecError);
    CHECK_THROWS_AS(io::parse_angle("1.5x"), InvalidSpecError);
}

TEST_CASE("matrix json round trip") {
    Matrix m(2, 3);
    m << 1, 2, 3, 4, 5, 0.1;
    const Matrix back = io::matrix_from_json(io::matrix_to_json(m));
    CHECK(max_abs(back - m) == 0.0);
    CHECK_THROWS_AS(io::matrix_from_json(json::array()), InvalidSpecError);
    CHECK_THROWS_AS(io::matrix_from_json(json::parse("[[1,2],[3]]")), InvalidSpecError);
}

TEST_CASE("form spec files") {
    const auto path = temp_file("spec.json");
    spit(path, R"({"n": 1, "family": "theta_phi", "params": {"phi": "pi/4"}})");
    const auto spec = io::load_form_spec(path.string());
    CHECK(spec.family == forms::Family::theta_phi);
    CHECK(spec.phi == M_PI / 4.0);

    const auto form = forms::make_family_form(spec);
    forms::FamilySpec poi;
    poi.family = forms::Family::poincare;
    poi.n = 1;
    CHECK(max_abs(form.matrix() - forms::make_family_form(poi).matrix()) <= 1e-15);

    // Custom matrix spec: the canonical midpoint coefficients.
    json custom;
    custom["n"] = 1;
    custom["family"] = "custom_matrix";
    custom["params"]["matrix"] = io::matrix_to_json(Matrix(0.5 * canonical::jtilde(1)));
    const auto path2 = temp_file("custom.json");
    spit(path2, custom.dump());
    const auto spec2 = io::load_form_spec(path2.string());
    CHECK(forms::make_family_form(spec2).is_liouvillian());

    spit(path, R"({"family": "poincare"})");
    CHECK_THROWS_AS(io::load_form_spec(path.string()), InvalidSpecError);
    spit(path, "not json");
    CHECK_THROWS_AS(io::load_form_spec(path.string()), InvalidSpecError);
    CHECK_THROWS_AS(io::load_form_spec("/nonexistent/file.json"), InvalidSpecError);

    fs::remove(path);
    fs::remove(path2);
}

TEST_CASE("trajectory csv format") {
    dynamics::Trajectory traj;
    traj.h = 0.1;
    Vector z(2);
    z << 1.0, 0.0;
    traj.states = {z, z};
    traj.energies = {0.5, 0.5};
    traj.solver_iterations = {0, 1};
    std::ostringstream out;
    io::write_trajectory_csv(out, traj, 1);
    std::istringstream lines(out.str());
    std::string header, row0, row1;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    CHECK(header == "step,t,q1,p1,H,deltaH");
    CHECK(row0 == "0,0,1,0,0.5,0");
    CHECK(row1 == "1,0.10000000000000001,1,0,0.5,0");  // 17 significant digits
}

TEST_CASE("derive report json contents") {
    forms::FamilySpec poi;
    poi.family = forms::Family::poincare;
    poi.n = 1;
    const json rep = io::derive_report(forms::make_family_form(poi), 1e-12);
    CHECK(rep.at("verdict") == "null_map");
    CHECK(rep.at("kernel_dimension") == 2);
    CHECK(rep.at("rho_is_zero") == true);
    CHECK(rep.at("P0").size() == 2);
    CHECK(rep.at("b")[0][0] == 0.0);
}

TEST_CASE("cli derive writes a classification report") {
    const auto out = temp_file("derive.json");
    CHECK(cli::run({"derive", "--family", "theta_phi", "--phi", "0", "--n", "1", "-o",
                    out.string()}) == 0);
    const json rep = json::parse(slurp(out));
    CHECK(rep.at("verdict") == "symplectic");
    CHECK(rep.at("b")[0][0] == 0.5);
    CHECK(rep.at("b")[1][1] == -0.5);

    CHECK(cli::run({"derive", "--family", "poincare", "-o", out.string()}) == 0);
    CHECK(json::parse(slurp(out)).at("verdict") == "null_map");
    fs::remove(out);
}

TEST_CASE("cli derive classifies a custom matrix spec file") {
    json custom;
    custom["n"] = 1;
    custom["family"] = "custom_matrix";
    custom["params"]["matrix"] = io::matrix_to_json(Matrix(0.5 * canonical::jtilde(1)));
    const auto spec_path = temp_file("derive_custom.json");
    spit(spec_path, custom.dump());
    const auto out = temp_file("derive_custom_out.json");
    CHECK(cli::run({"derive", "--form", spec_path.string(), "-o", out.string()}) == 0);
    const json rep = json::parse(slurp(out));
    CHECK(rep.at("verdict") == "symplectic");
    for (const auto& row : rep.at("b")) {
        for (const auto& entry : row) CHECK(entry.get<double>() == 0.0);
    }
    fs::remove(spec_path);
    fs::remove(out);
}

TEST_CASE("cli integrate with zero steps writes the initial row only") {
    const auto out = temp_file("zero_steps.csv");
    CHECK(cli::run({"integrate", "--system", "harmonic", "--scheme", "midpoint", "--z0",
                    "1,0", "--h", "0.1", "--steps", "0", "-o", out.string()}) == 0);
    std::istringstream lines(slurp(out));
    std::string header, row, extra;
    std::getline(lines, header);
    REQUIRE(static_cast<bool>(std::getline(lines, row)));
    CHECK_FALSE(static_cast<bool>(std::getline(lines, extra)));
    CHECK(row.substr(0, 6) == "0,0,1,");
    fs::remove(out);
}

TEST_CASE("cli derive rejects invalid input with exit 1") {
    CHECK(cli::run({"derive", "--family", "no_such_family"}) == 1);
    CHECK(cli::run({"derive"}) == 1);
    CHECK(cli::run({"nonsense_command"}) == 1);
    CHECK(cli::run({"derive", "--form", "/nonexistent/spec.json"}) == 1);
}

TEST_CASE("cli sweep: theta grid rows and determinism of sampled sweeps") {
    const auto out = temp_file("sweep.csv");
    CHECK(cli::run({"sweep", "--family", "theta_phi", "--from", "0", "--to", "pi/2",
                    "--points", "101", "--n", "1", "-o", out.string()}) == 0);
    const std::string csv = slurp(out);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "phi,identity_residual,hamiltonian_residual,verdict");
    int rows = 0, symplectic_rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.find(",symplectic") != std::string::npos) ++symplectic_rows;
    }
    CHECK(rows == 101);  // pi/4 is on this grid already
    CHECK(symplectic_rows == 2);

    const auto out2 = temp_file("sweep2.csv");
    CHECK(cli::run({"sweep", "--family", "abc", "--samples", "50", "--n", "2", "--seed", "7",
                    "-o", out2.string()}) == 0);
    const auto out3 = temp_file("sweep3.csv");
    CHECK(cli::run({"sweep", "--family", "abc", "--samples", "50", "--n", "2", "--seed", "7",
                    "-o", out3.string()}) == 0);
    const std::string a = slurp(out2), b = slurp(out3);
    CHECK(a == b);  // byte-identical under the same seed
    CHECK(a.find("# seed=7") == 0);
    // Every random sample misses the beta+gamma=0 plane: predicate column all 0.
    CHECK(a.find(",1\n") == std::string::npos);
    CHECK(cli::run({"sweep", "--family", "theta_phi", "--points", "0"}) == 1);
    fs::remove(out);
    fs::remove(out2);
    fs::remove(out3);
}

TEST_CASE("cli sweep degenerate single-point grid") {
    const auto out = temp_file("sweep_single.csv");
    CHECK(cli::run({"sweep", "--family", "theta_phi", "--from", "0", "--to", "0", "--points",
                    "1", "-o", out.string()}) == 0);
    std::istringstream lines(slurp(out));
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    const bool has_extra = static_cast<bool>(std::getline(lines, extra));
    CHECK_FALSE(has_extra);
    CHECK(row.substr(0, 2) == "0,");
    CHECK(row.find("symplectic") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("cli integrate: constant rows for the identity scheme") {
    const auto out = temp_file("traj.csv");
    CHECK(cli::run({"integrate", "--system", "pendulum", "--form", "poincare", "--z0",
                    "1.0,0.5", "--h", "0.1", "--steps", "100", "-o", out.string()}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find(",1,0.5,") != std::string::npos);
    }
    CHECK(rows == 101);
    fs::remove(out);
}

TEST_CASE("cli integrate: invalid state or system reports exit 1") {
    CHECK(cli::run({"integrate", "--system", "pendulum", "--scheme", "midpoint", "--z0",
                    "1.0,0.5,0.2", "--h", "0.1"}) == 1);
    CHECK(cli::run({"integrate", "--system", "kepler", "--scheme", "midpoint", "--z0", "1,0",
                    "--h", "0.1"}) == 1);
    CHECK(cli::run({"integrate", "--system", "pendulum", "--scheme", "midpoint", "--z0",
                    "1,0", "--h", "0.1", "--method", "simplectic"}) == 1);
    CHECK(cli::run({"integrate", "--system", "pendulum", "--scheme", "midpoint", "--z0",
                    "1,0", "--h", "-0.1"}) == 1);
}

TEST_CASE("cli integrate: solver failure keeps the partial trajectory and exits 3") {
    const auto out = temp_file("partial.csv");
    CHECK(cli::run({"integrate", "--system", "pendulum", "--scheme", "midpoint", "--z0",
                    "1.0,0.5", "--h", "1000", "--steps", "5", "-o", out.string()}) == 3);
    std::istringstream lines(slurp(out));
    std::string header, row;
    std::getline(lines, header);
    CHECK(static_cast<bool>(std::getline(lines, row)));  // initial state retained
    fs::remove(out);
}

TEST_CASE("cli integrate: quadratic system from a matrix file") {
    const auto mfile = temp_file("m.json");
    spit(mfile, "[[1,0],[0,1]]");
    const auto out = temp_file("quad.csv");
    CHECK(cli::run({"integrate", "--system", "quadratic", "--system-matrix", mfile.string(),
                    "--scheme", "midpoint", "--z0", "1,0", "--h", "0.1", "--steps", "10",
                    "-o", out.string()}) == 0);
    fs::remove(mfile);
    fs::remove(out);
}

TEST_CASE("cli integrate with the newton solver") {
    const auto out = temp_file("newton.csv");
    CHECK(cli::run({"integrate", "--system", "pendulum", "--scheme", "midpoint", "--z0",
                    "1.0,0.5", "--h", "0.3", "--steps", "20", "--method", "newton", "-o",
                    out.string()}) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    int rows = -1;  // skip header
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 21);
    fs::remove(out);
}

TEST_CASE("cli verify subcommand exit codes") {
    CHECK(cli::run({"verify", "--only", "theorem1"}) == 0);
    CHECK(cli::run({"verify", "--only", "decomposition", "--tol", "1e-20"}) == 2);
    CHECK(cli::run({"verify", "--only", "not_a_check"}) == 1);
}
