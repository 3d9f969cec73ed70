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

#include <algorithm>
#include <cmath>

#include "qbattery/dynamics.hpp"

namespace qbattery {

std::string_view to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::Ode: return "ode";
        case SolverKind::Laplace: return "laplace";
        case SolverKind::Quadrature: return "quadrature";
    }
    return "ode";
}

SolverKind parse_solver_kind(std::string_view text) {
    if (text == "ode") return SolverKind::Ode;
    if (text == "laplace") return SolverKind::Laplace;
    if (text == "quadrature") return SolverKind::Quadrature;
    throw ValidationError({{"solver", "expected ode, laplace or quadrature, got '" + std::string(text) + "'"}});
}

Trajectory solve(SolverKind kind, const SystemParams& params, const InitialState& initial,
                 const TimeGrid& grid, const SolverOptions& options) {
    switch (kind) {
        case SolverKind::Laplace: return evaluate(solve_laplace(params, initial), grid, options);
        case SolverKind::Quadrature: return solve_quadrature(params, initial, grid, options);
        case SolverKind::Ode: break;
    }
    return solve_ode_aux(params, initial, grid, options);
}

double Deviation::worst() const noexcept { return std::max({population1, population2, coherence}); }

Deviation max_deviation(const Trajectory& a, const Trajectory& b) {
    if (a.amplitudes.size() != b.amplitudes.size())
        throw std::invalid_argument("max_deviation: trajectories sampled on different grids");
    Deviation d;
    for (std::size_t k = 0; k < a.amplitudes.size(); ++k) {
        const AmplitudePair& x = a.amplitudes[k];
        const AmplitudePair& y = b.amplitudes[k];
        d.population1 = std::max(d.population1, std::abs(std::norm(x.c1) - std::norm(y.c1)));
        d.population2 = std::max(d.population2, std::abs(std::norm(x.c2) - std::norm(y.c2)));
        d.coherence = std::max(d.coherence, std::abs(x.c1 * std::conj(x.c2) - y.c1 * std::conj(y.c2)));
    }
    return d;
}

double CrossValidationReport::worst() const noexcept {
    return std::max({ode_vs_quadrature.worst(), ode_vs_laplace.worst(), laplace_vs_quadrature.worst()});
}

CrossValidationReport cross_validate(const SystemParams& params, const InitialState& initial,
                                     const TimeGrid& grid, double tol, const SolverOptions& options) {
    const Trajectory ode = solve_ode_aux(params, initial, grid, options);
    const Trajectory quad = solve_quadrature(params, initial, grid, options);
    const LaplaceSolution poles = solve_laplace(params, initial);
    const Trajectory laplace = evaluate(poles, grid, options);

    CrossValidationReport report;
    report.tol = tol;
    report.laplace_fallback = poles.ode_fallback;
    report.ode_vs_quadrature = max_deviation(ode, quad);
    report.ode_vs_laplace = max_deviation(ode, laplace);
    report.laplace_vs_quadrature = max_deviation(laplace, quad);
    report.pass = report.worst() < tol;
    return report;
}

}  // namespace qbattery
