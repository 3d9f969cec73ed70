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

#include <cstddef>
#include <tuple>
#include <vector>

#include "norm_guard.hpp"
#include "qbattery/dynamics.hpp"

namespace qbattery {

namespace {

// Heun predictor-corrector on the integro-differential system. The memory
// integral at t_n is a trapezoidal sum over the whole stored history, so the
// exponential form of the kernel is never exploited here.
std::vector<AmplitudePair> heun_volterra(const SystemParams& params, const InitialState& initial,
                                         const TimeGrid& grid, const SolverOptions& options) {
    const std::size_t n = grid.n_steps();
    const double dt = grid.dt();
    const complex half_eta{0.0, 0.5 * params.eta};
    const double g1sq = params.g1 * params.g1;
    const double g2sq = params.g2 * params.g2;
    const double cross = params.cross_coupling();

    std::vector<complex> f(n + 1);
    for (std::size_t k = 0; k <= n; ++k) f[k] = kernel(params, grid.time(k));

    std::vector<AmplitudePair> amps(n + 1);
    amps[0] = initial.amplitudes();

    // Memory sources g_i^2 C_i + cross * C_j along the history.
    std::vector<complex> src1(n + 1), src2(n + 1);
    const auto sources = [&](const AmplitudePair& a) {
        return std::pair{g1sq * a.c1 + cross * a.c2, g2sq * a.c2 + cross * a.c1};
    };
    std::tie(src1[0], src2[0]) = sources(amps[0]);

    const auto local = [&](const AmplitudePair& a, complex mem1, complex mem2) {
        return AmplitudePair{-half_eta * a.c2 - mem1, -half_eta * a.c1 - mem2};
    };

    AmplitudePair rate = local(amps[0], 0.0, 0.0);
    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t next = step + 1;
        // History part of the trapezoid sum at t_{next}, all weights except the endpoint.
        complex hist1 = 0.5 * f[next] * src1[0];
        complex hist2 = 0.5 * f[next] * src2[0];
        for (std::size_t j = 1; j <= step; ++j) {
            hist1 += f[next - j] * src1[j];
            hist2 += f[next - j] * src2[j];
        }

        const AmplitudePair& cur = amps[step];
        const AmplitudePair pred{cur.c1 + dt * rate.c1, cur.c2 + dt * rate.c2};
        auto [p1, p2] = sources(pred);
        const AmplitudePair pred_rate =
            local(pred, dt * (hist1 + 0.5 * p1), dt * (hist2 + 0.5 * p2));

        AmplitudePair corr{cur.c1 + 0.5 * dt * (rate.c1 + pred_rate.c1),
                           cur.c2 + 0.5 * dt * (rate.c2 + pred_rate.c2)};
        detail::check_excitation("quadrature", corr, next, options);

        amps[next] = corr;
        std::tie(src1[next], src2[next]) = sources(corr);
        rate = local(corr, dt * (hist1 + 0.5 * src1[next]), dt * (hist2 + 0.5 * src2[next]));
    }
    return amps;
}

}  // namespace

// The scheme is second order with a smooth error expansion in dt, so one
// Richardson step over the grid and its 2x refinement cancels the dt^2 term.
Trajectory solve_quadrature(const SystemParams& params, const InitialState& initial,
                            const TimeGrid& grid, const SolverOptions& options) {
    require_valid(params);
    Trajectory out{grid, heun_volterra(params, initial, grid, options), params, initial, "quadrature"};
    if (!options.extrapolate_quadrature) return out;

    const auto fine = heun_volterra(params, initial, TimeGrid(grid.t_end(), 2 * grid.n_steps()), options);
    for (std::size_t k = 1; k < out.amplitudes.size(); ++k) {
        AmplitudePair& a = out.amplitudes[k];
        const AmplitudePair& f = fine[2 * k];
        a = {(4.0 * f.c1 - a.c1) / 3.0, (4.0 * f.c2 - a.c2) / 3.0};
        detail::check_excitation("quadrature", a, k, options);
    }
    return out;
}

}  // namespace qbattery
