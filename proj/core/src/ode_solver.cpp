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

#include "norm_guard.hpp"
#include "qbattery/dynamics.hpp"

namespace qbattery {

AuxState aux_derivative(const SystemParams& p, const AuxState& y) noexcept {
    const complex half_eta{0.0, 0.5 * p.eta};
    const double cross = p.cross_coupling();
    const complex z = p.kernel_exponent();
    return {
        -half_eta * y.c2 - p.g1 * p.g1 * y.b1 - cross * y.b2,
        -half_eta * y.c1 - p.g2 * p.g2 * y.b2 - cross * y.b1,
        y.c1 - z * y.b1,
        y.c2 - z * y.b2,
    };
}

namespace {

AuxState axpy(const AuxState& y, double h, const AuxState& k) {
    return {y.c1 + h * k.c1, y.c2 + h * k.c2, y.b1 + h * k.b1, y.b2 + h * k.b2};
}

}  // namespace

// Differentiating B_i(t) = int_0^t f(t-t') C_i(t') dt' with the exponential
// kernel gives dB_i/dt = C_i - (gamma/2 + i delta) B_i, so the Volterra system
// is exactly a 4-dimensional linear ODE. Classical RK4, fixed step.
Trajectory solve_ode_aux(const SystemParams& params, const InitialState& initial,
                         const TimeGrid& grid, const SolverOptions& options) {
    require_valid(params);
    const double h = grid.dt();

    Trajectory out{grid, {}, params, initial, "ode"};
    out.amplitudes.reserve(grid.size());
    const AmplitudePair start = initial.amplitudes();
    out.amplitudes.push_back(start);

    AuxState y{start.c1, start.c2, 0.0, 0.0};
    for (std::size_t step = 1; step <= grid.n_steps(); ++step) {
        const AuxState k1 = aux_derivative(params, y);
        const AuxState k2 = aux_derivative(params, axpy(y, 0.5 * h, k1));
        const AuxState k3 = aux_derivative(params, axpy(y, 0.5 * h, k2));
        const AuxState k4 = aux_derivative(params, axpy(y, h, k3));
        const double w = h / 6.0;
        y.c1 += w * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1);
        y.c2 += w * (k1.c2 + 2.0 * k2.c2 + 2.0 * k3.c2 + k4.c2);
        y.b1 += w * (k1.b1 + 2.0 * k2.b1 + 2.0 * k3.b1 + k4.b1);
        y.b2 += w * (k1.b2 + 2.0 * k2.b2 + 2.0 * k3.b2 + k4.b2);

        const AmplitudePair pair{y.c1, y.c2};
        detail::check_excitation("ode", pair, step, options);
        out.amplitudes.push_back(pair);
    }
    return out;
}

}  // namespace qbattery
