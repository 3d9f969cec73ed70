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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "norm_guard.hpp"
#include "qbattery/dynamics.hpp"

namespace qbattery {

namespace {

// Multiplying the transformed equations by a = s + z (z = gamma/2 + i delta)
// gives the determinant a * Q(s). The factor a cancels against both
// numerators because the bath only sees the bright combination
// g1 C1 + s g2 C2, leaving
//   Q(s)  = s^3 + z s^2 + (g1^2 + g2^2 + eta^2/4) s + z eta^2/4 - i eta c,
//   N1(s) = (s a + g2^2) C1(0) - (i eta a/2 + c) C2(0),
//   N2(s) = (s a + g1^2) C2(0) - (i eta a/2 + c) C1(0),
// with c the signed cross coupling.
struct Cubic {
    std::array<complex, 3> lower;  // monic: s^3 + lower[2] s^2 + lower[1] s + lower[0]

    complex operator()(complex s) const { return ((s + lower[2]) * s + lower[1]) * s + lower[0]; }
    complex derivative(complex s) const { return (3.0 * s + 2.0 * lower[2]) * s + lower[1]; }
};

Cubic characteristic(const SystemParams& p) {
    const complex z = p.kernel_exponent();
    const double quarter_eta_sq = 0.25 * p.eta * p.eta;
    const complex i_eta_c{0.0, p.eta * p.cross_coupling()};
    return {{z * quarter_eta_sq - i_eta_c, p.g1 * p.g1 + p.g2 * p.g2 + quarter_eta_sq, z}};
}

std::array<complex, 3> companion_roots(const Cubic& q) {
    Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    for (int k = 0; k < 3; ++k) companion(k, 2) = -q.lower[k];
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, /*computeEigenvectors=*/false);
    std::array<complex, 3> roots;
    for (int k = 0; k < 3; ++k) {
        complex s = solver.eigenvalues()[k];
        // Newton polish; skipped near multiple roots where Q' vanishes.
        for (int it = 0; it < 3; ++it) {
            const complex d = q.derivative(s);
            if (std::abs(d) < 1e-6) break;
            const complex next = s - q(s) / d;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
            s = next;
        }
        roots[k] = s;
    }
    return roots;
}

}  // namespace

LaplaceSolution solve_laplace(const SystemParams& params, const InitialState& initial) {
    require_valid(params);
    LaplaceSolution out;
    out.params = params;
    out.initial = initial;

    const Cubic q = characteristic(params);
    const auto roots = companion_roots(q);

    out.min_pole_separation = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
        for (std::size_t k = j + 1; k < roots.size(); ++k)
            out.min_pole_separation = std::min(out.min_pole_separation, std::abs(roots[j] - roots[k]));

    if (out.min_pole_separation < kDegeneratePoleSeparation * params.gamma) {
        out.ode_fallback = true;
        return out;
    }

    const AmplitudePair c0 = initial.amplitudes();
    const complex z = params.kernel_exponent();
    const double g1sq = params.g1 * params.g1;
    const double g2sq = params.g2 * params.g2;
    const double cross = params.cross_coupling();
    out.poles.reserve(roots.size());
    for (const complex s : roots) {
        const complex a = s + z;
        const complex mix = complex(0.0, 0.5 * params.eta) * a + cross;
        const complex n1 = (s * a + g2sq) * c0.c1 - mix * c0.c2;
        const complex n2 = (s * a + g1sq) * c0.c2 - mix * c0.c1;
        const complex d = q.derivative(s);
        out.poles.push_back({s, n1 / d, n2 / d});
    }
    return out;
}

AmplitudePair evaluate_at(const LaplaceSolution& solution, double t) {
    AmplitudePair acc{0.0, 0.0};
    for (const Pole& p : solution.poles) {
        const complex e = std::exp(p.s * t);
        acc.c1 += p.r1 * e;
        acc.c2 += p.r2 * e;
    }
    return acc;
}

Trajectory evaluate(const LaplaceSolution& solution, const TimeGrid& grid,
                    const SolverOptions& options) {
    if (solution.ode_fallback) {
        Trajectory t = solve_ode_aux(solution.params, solution.initial, grid, options);
        t.solver = "laplace(ode-fallback)";
        return t;
    }
    const bool empty = std::all_of(solution.poles.begin(), solution.poles.end(), [](const Pole& p) {
        return p.r1 == complex{} && p.r2 == complex{};
    });
    if (empty) throw SolverError("laplace", "all residues vanish; initial amplitudes must be unit-norm");

    Trajectory out{grid, {}, solution.params, solution.initial, "laplace"};
    out.amplitudes.reserve(grid.size());
    // The expansion reproduces C(0) only up to rounding; pin it exactly.
    out.amplitudes.push_back(solution.initial.amplitudes());
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const AmplitudePair pair = evaluate_at(solution, grid.time(k));
        detail::check_excitation("laplace", pair, k, options);
        out.amplitudes.push_back(pair);
    }
    return out;
}

}  // namespace qbattery
