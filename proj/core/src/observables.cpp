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

#include "qbattery/observables.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qbattery {

std::array<double, 4> TwoQubitState::eigenvalues() const {
    const double mean = 0.5 * (rho22 + rho33);
    const double diff = rho22 - rho33;
    const double radius = 0.5 * std::sqrt(diff * diff + 4.0 * std::norm(rho23));
    return {0.0, mean + radius, mean - radius, rho44};
}

Eigen::Matrix4cd TwoQubitState::matrix() const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(1, 1) = rho22;
    m(2, 2) = rho33;
    m(3, 3) = rho44;
    m(1, 2) = rho23;
    m(2, 1) = std::conj(rho23);
    return m;
}

Eigen::Matrix2cd QubitState::matrix() const {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = p_excited;
    m(1, 1) = 1.0 - p_excited;
    return m;
}

TwoQubitState two_qubit_state(const AmplitudePair& pair, double tol) {
    const double p1 = std::norm(pair.c1);
    const double p2 = std::norm(pair.c2);
    if (!(p1 + p2 <= 1.0 + tol))
        throw std::invalid_argument("two_qubit_state: |c1|^2 + |c2|^2 exceeds 1");
    return {p1, p2, std::max(0.0, 1.0 - p1 - p2), pair.c1 * std::conj(pair.c2)};
}

QubitState charger_state(const AmplitudePair& pair) { return {std::norm(pair.c1)}; }
QubitState battery_state(const AmplitudePair& pair) { return {std::norm(pair.c2)}; }

Eigen::Matrix2cd battery_hamiltonian(double omega0) {
    Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
    h(0, 0) = 0.5 * omega0;
    h(1, 1) = -0.5 * omega0;
    return h;
}

double energy_variation(const AmplitudePair& pair, const InitialState& initial, double w0) {
    return w0 * (std::norm(pair.c2) - std::norm(initial.amplitudes().c2));
}

double average_power(double delta_e, double t) {
    if (t < 0.0) throw std::domain_error("average_power: time must be non-negative");
    return t == 0.0 ? 0.0 : delta_e / t;
}

double ergotropy_two_level(double excited_population, double w0) {
    // Theta(0) = 1; both branches vanish at the threshold.
    return excited_population >= 0.5 ? w0 * (2.0 * excited_population - 1.0) : 0.0;
}

double ergotropy_two_level(const AmplitudePair& pair, double w0) {
    return ergotropy_two_level(std::norm(pair.c2), w0);
}

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-9;
constexpr double kPositivityTol = 1e-9;

struct Spectra {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXcd energy_vectors;
    Eigen::VectorXd populations;  // descending
    Eigen::MatrixXcd population_vectors;
};

Spectra decompose(const Eigen::MatrixXcd& state, const Eigen::MatrixXcd& hamiltonian) {
    if (state.rows() != state.cols() || hamiltonian.rows() != hamiltonian.cols() ||
        state.rows() != hamiltonian.rows() || state.rows() == 0)
        throw std::invalid_argument("ergotropy: state and Hamiltonian must be square and of equal size");
    if ((state - state.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw std::invalid_argument("ergotropy: state is not Hermitian");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw std::invalid_argument("ergotropy: Hamiltonian is not Hermitian");
    if (std::abs(state.trace() - 1.0) > kTraceTol)
        throw std::invalid_argument("ergotropy: state trace differs from 1");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h_eig(hamiltonian);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> r_eig(state);
    if (r_eig.eigenvalues().minCoeff() < -kPositivityTol)
        throw std::invalid_argument("ergotropy: state is not positive semidefinite");

    const auto n = state.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return r_eig.eigenvalues()[a] > r_eig.eigenvalues()[b];
    });

    Spectra s{h_eig.eigenvalues(), h_eig.eigenvectors(), Eigen::VectorXd(n), Eigen::MatrixXcd(n, n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        s.populations[j] = r_eig.eigenvalues()[src];
        s.population_vectors.col(j) = r_eig.eigenvectors().col(src);
    }
    return s;
}

}  // namespace

Eigen::MatrixXcd passive_state(const Eigen::MatrixXcd& state, const Eigen::MatrixXcd& hamiltonian) {
    const Spectra s = decompose(state, hamiltonian);
    return s.energy_vectors * s.populations.cast<complex>().asDiagonal() * s.energy_vectors.adjoint();
}

double ergotropy_general(const Eigen::MatrixXcd& state, const Eigen::MatrixXcd& hamiltonian) {
    const Spectra s = decompose(state, hamiltonian);
    const auto n = state.rows();
    double work = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double overlap = std::norm(s.population_vectors.col(j).dot(s.energy_vectors.col(i)));
            work += s.populations[j] * s.energies[i] * (overlap - (i == j ? 1.0 : 0.0));
        }
    }
    return std::max(0.0, work);
}

MetricsSeries metrics(const Trajectory& trajectory, double w0) {
    const std::size_t n = trajectory.amplitudes.size();
    MetricsSeries m;
    m.times.resize(n);
    m.delta_e.resize(n);
    m.power.resize(n);
    m.ergotropy.resize(n);
    const double start = std::norm(trajectory.initial.amplitudes().c2);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = trajectory.grid.time(k);
        const double p = std::norm(trajectory.amplitudes[k].c2);
        m.times[k] = t;
        m.delta_e[k] = w0 * (p - start);
        m.power[k] = average_power(m.delta_e[k], t);
        m.ergotropy[k] = ergotropy_two_level(p, w0);
    }
    return m;
}

}  // namespace qbattery
