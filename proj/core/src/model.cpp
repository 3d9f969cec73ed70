// Copyright 2026 The qbattery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbattery/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qbattery {

std::string format_issues(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i != 0) os << "; ";
        os << issues[i].field << ": " << issues[i].message;
    }
    return os.str();
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error("invalid parameters: " + format_issues(issues)),
      issues_(std::move(issues)) {}

SolverError::SolverError(std::string solver, const std::string& what)
    : std::runtime_error(solver + ": " + what), solver_(std::move(solver)) {}

std::string_view to_string(CrossSign sign) {
    return sign == CrossSign::CommonBathMinus ? "common" : "bracket";
}

CrossSign parse_cross_sign(std::string_view text) {
    if (text == "common" || text == "CommonBathMinus") return CrossSign::CommonBathMinus;
    if (text == "bracket" || text == "BracketPlus") return CrossSign::BracketPlus;
    throw ValidationError({{"system.cross_sign",
                            "expected 'common' or 'bracket', got '" + std::string(text) + "'"}});
}

AmplitudePair InitialState::amplitudes() const {
    const double half = 0.5 * theta;
    return {complex(std::cos(half), 0.0), std::sin(half) * std::polar(1.0, phi)};
}

TimeGrid::TimeGrid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps) {
    std::vector<ValidationIssue> issues;
    if (!std::isfinite(t_end) || t_end <= 0.0) issues.push_back({"grid.t_end", "t_end must be positive"});
    if (n_steps < 2) issues.push_back({"grid.n_steps", "n_steps must be at least 2"});
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

complex kernel(const SystemParams& params, double tau) {
    if (!(tau >= 0.0)) throw std::domain_error("kernel: elapsed time must be non-negative");
    return std::exp(-params.kernel_exponent() * tau);
}

double spectral_density(const SystemParams& params, double omega) {
    const double half_width = 0.5 * params.gamma;
    const double offset = omega - params.omega_c();
    return half_width / (std::numbers::pi * (offset * offset + half_width * half_width));
}

std::vector<ValidationIssue> validate(const SystemParams& p) {
    std::vector<ValidationIssue> issues;
    const auto finite = [&](double v, const char* field) {
        if (!std::isfinite(v)) {
            issues.push_back({field, "value must be finite"});
            return false;
        }
        return true;
    };
    if (finite(p.gamma, "system.gamma") && p.gamma <= 0.0)
        issues.push_back({"system.gamma", "gamma must be positive"});
    if (finite(p.omega0, "system.omega0") && p.omega0 <= 0.0)
        issues.push_back({"system.omega0", "omega0 must be positive"});
    if (finite(p.g1, "system.g1") && p.g1 < 0.0)
        issues.push_back({"system.g1", "couplings must be non-negative"});
    if (finite(p.g2, "system.g2") && p.g2 < 0.0)
        issues.push_back({"system.g2", "couplings must be non-negative"});
    finite(p.eta, "system.eta");
    finite(p.delta, "system.delta");
    return issues;
}

std::vector<ValidationIssue> validate(const InitialState& s) {
    std::vector<ValidationIssue> issues;
    if (!std::isfinite(s.theta)) issues.push_back({"initial.theta", "value must be finite"});
    if (!std::isfinite(s.phi)) issues.push_back({"initial.phi", "value must be finite"});
    return issues;
}

void require_valid(const SystemParams& params) {
    if (auto issues = validate(params); !issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace qbattery
