#pragma once

// Serialization of reports and trajectories plus the form-spec file format.
//
// Form spec (JSON):   {"n": 1, "family": "theta_phi", "params": {"phi": 0.785}}
//                     {"n": 1, "family": "custom_matrix",
//                      "params": {"matrix": [[...], ...]}}   row-major, (q,p,Q,P)
// Trajectory CSV:     step,t,q1..qn,p1..pn,H,deltaH     (17 significant digits)
// theta_phi sweep CSV: phi,identity_residual,hamiltonian_residual,verdict
// abc sweep CSV:      alpha1..,beta1..,gamma1..,identity_residual,
//                     hamiltonian_residual,verdict,bg_predicate

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouform/derivation.hpp"
#include "liouform/diagnostics.hpp"
#include "liouform/dynamics.hpp"
#include "liouform/forms.hpp"

namespace liouform::io {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& rows);

nlohmann::json report_to_json(const derivation::SymplecticityReport& rep);

// Full derivation report: the classification plus kernel dimension.
nlohmann::json derive_report(const forms::LiouvillianForm& form, double tol);

forms::FamilySpec form_spec_from_json(const nlohmann::json& j);
forms::FamilySpec load_form_spec(const std::string& path);

// Accepts plain decimals plus exact pi expressions: "pi", "pi/4", "2pi",
// "3pi/2", "-pi/6". Multiples keep pi's floating value exact where the
// divisor is a power of two.
double parse_angle(const std::string& text);

std::string format_double(double value);  // %.17g

void write_trajectory_csv(std::ostream& out, const dynamics::Trajectory& traj, int n);
void write_theta_sweep_csv(std::ostream& out,
                           const std::vector<diagnostics::SweepRecord>& records);
// bg_tol is the |beta_i + gamma_i| threshold for the predicate column.
void write_abc_sweep_csv(std::ostream& out,
                         const std::vector<diagnostics::SweepRecord>& records, int n,
                         double bg_tol, const std::string& header_comment = "");

}  // namespace liouform::io
