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

#pragma once

// Physical parameters, initial state and bath memory of the charger/battery
// pair. Rates and frequencies are expressed in units of the Lorentzian width
// gamma; times in units of 1/gamma.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "qbattery/errors.hpp"

namespace qbattery {

using complex = std::complex<double>;

/// Sign convention of the g1*g2 cross term in the amplitude equations.
enum class CrossSign {
    /// Both amplitudes feed the bath as (g1*C1 + g2*C2). Default.
    CommonBathMinus,
    /// Cross term enters the memory bracket as (g1^2*C1 - g1*g2*C2).
    BracketPlus,
};

std::string_view to_string(CrossSign sign);
/// Accepts "common" / "bracket" (and the enumerator names).
CrossSign parse_cross_sign(std::string_view text);

struct SystemParams {
    double omega0 = 1.0;  // qubit transition frequency; W0 = omega0 (hbar = 1)
    double eta = 0.0;     // charger-battery coherent coupling
    double g1 = 0.0;      // charger-bath coupling
    double g2 = 0.0;      // battery-bath coupling
    double gamma = 1.0;   // Lorentzian width
    double delta = 0.0;   // detuning omega_c - omega0
    CrossSign cross_sign = CrossSign::CommonBathMinus;

    double omega_c() const noexcept { return omega0 + delta; }

    /// Coefficient multiplying the partner memory term, +g1*g2 for the
    /// common bath and -g1*g2 for the bracket convention.
    double cross_coupling() const noexcept {
        return cross_sign == CrossSign::CommonBathMinus ? g1 * g2 : -g1 * g2;
    }

    /// gamma/2 + i*delta: the decay exponent of the memory kernel.
    complex kernel_exponent() const noexcept { return {0.5 * gamma, delta}; }

    bool operator==(const SystemParams&) const = default;
};

/// Energy quantum of one full battery charge.
inline double battery_quantum(const SystemParams& p) noexcept { return p.omega0; }

struct AmplitudePair {
    complex c1;
    complex c2;

    double excitation() const noexcept { return std::norm(c1) + std::norm(c2); }
    bool operator==(const AmplitudePair&) const = default;
};

/// C1(0) = cos(theta/2), C2(0) = sin(theta/2) e^{i phi}.
struct InitialState {
    double theta = 0.0;
    double phi = 0.0;

    AmplitudePair amplitudes() const;
    bool operator==(const InitialState&) const = default;
};

/// Uniform grid t_k = k * t_end / n_steps, k = 0..n_steps.
class TimeGrid {
public:
    /// Throws ValidationError unless t_end > 0 and n_steps >= 2.
    TimeGrid(double t_end, std::size_t n_steps);

    double t_end() const noexcept { return t_end_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t size() const noexcept { return n_steps_ + 1; }
    double dt() const noexcept { return t_end_ / static_cast<double>(n_steps_); }
    double time(std::size_t k) const noexcept {
        return k == n_steps_ ? t_end_ : static_cast<double>(k) * dt();
    }

    bool operator==(const TimeGrid&) const = default;

private:
    double t_end_;
    std::size_t n_steps_;
};

/// Bath correlation function f(tau) = exp(-(gamma/2 + i delta) tau).
/// Throws std::domain_error for tau < 0.
complex kernel(const SystemParams& params, double tau);

/// Normalized Lorentzian (1/pi) (gamma/2) / ((omega - omega_c)^2 + (gamma/2)^2).
double spectral_density(const SystemParams& params, double omega);

/// Every invariant violation; an empty result means the parameters are usable.
std::vector<ValidationIssue> validate(const SystemParams& params);
std::vector<ValidationIssue> validate(const InitialState& initial);

/// Throws ValidationError when validate() reports anything.
void require_valid(const SystemParams& params);

}  // namespace qbattery
