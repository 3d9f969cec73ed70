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

#include <Eigen/Core>
#include <array>
#include <vector>

#include "qbattery/dynamics.hpp"

namespace qbattery {

/// Reduced charger+battery state in the basis {|a1 a2>, |a1 b2>, |b1 a2>, |b1 b2>}
/// (a = excited). Only the single-excitation block and the joint ground
/// population are non-zero.
struct TwoQubitState {
    double rho22 = 0.0;  // |C1|^2
    double rho33 = 0.0;  // |C2|^2
    double rho44 = 1.0;  // excitation lost to the bath
    complex rho23{};     // C1 C2*

    /// Closed-form spectrum {0, lambda_+, lambda_-, rho44}.
    std::array<double, 4> eigenvalues() const;
    Eigen::Matrix4cd matrix() const;
};

/// Diagonal single-qubit state in the basis {|a>, |b>}.
struct QubitState {
    double p_excited = 0.0;

    Eigen::Matrix2cd matrix() const;
};

/// Throws std::invalid_argument if |c1|^2 + |c2|^2 exceeds 1 + tol.
TwoQubitState two_qubit_state(const AmplitudePair& pair, double tol = 1e-9);

QubitState charger_state(const AmplitudePair& pair);
QubitState battery_state(const AmplitudePair& pair);

/// H_B = (omega0 / 2) sigma_z in the basis {|a>, |b>}.
Eigen::Matrix2cd battery_hamiltonian(double omega0);

/// W0 (|c2(t)|^2 - |C2(0)|^2).
double energy_variation(const AmplitudePair& pair, const InitialState& initial, double w0);

/// delta_e / t, with the removable singularity at t = 0 set to 0.
/// Throws std::domain_error for t < 0.
double average_power(double delta_e, double t);

/// W0 (2p - 1) above population inversion, 0 otherwise.
double ergotropy_two_level(double excited_population, double w0);
double ergotropy_two_level(const AmplitudePair& pair, double w0);

/// Passive rearrangement of `state` with respect to `hamiltonian`: the largest
/// population of `state` placed on the lowest energy level and so on.
Eigen::MatrixXcd passive_state(const Eigen::MatrixXcd& state, const Eigen::MatrixXcd& hamiltonian);

/// Maximal cyclic-unitary work from the spectral decompositions of state and
/// Hamiltonian. Inputs must be square, of equal size, Hermitian, and the state
/// unit-trace and positive semidefinite; otherwise std::invalid_argument.
double ergotropy_general(const Eigen::MatrixXcd& state, const Eigen::MatrixXcd& hamiltonian);

struct MetricsSeries {
    std::vector<double> times;
    std::vector<double> delta_e;
    std::vector<double> power;
    std::vector<double> ergotropy;
};

MetricsSeries metrics(const Trajectory& trajectory, double w0);

}  // namespace qbattery
