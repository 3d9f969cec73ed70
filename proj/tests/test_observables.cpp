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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "qbattery/observables.hpp"
#include "support/oracles.hpp"

namespace qbattery {
namespace {

TEST(TwoQubitState, ChargerFullyExcited) {
    const TwoQubitState s = two_qubit_state({1.0, 0.0});
    EXPECT_EQ(s.rho22, 1.0);
    EXPECT_EQ(s.rho33, 0.0);
    EXPECT_EQ(s.rho44, 0.0);
    EXPECT_EQ(s.rho23, complex(0.0, 0.0));
}

TEST(TwoQubitState, EqualSuperposition) {
    const double h = 1.0 / std::sqrt(2.0);
    const TwoQubitState s = two_qubit_state({h, h});
    EXPECT_NEAR(s.rho22, 0.5, 1e-15);
    EXPECT_NEAR(s.rho33, 0.5, 1e-15);
    EXPECT_NEAR(s.rho44, 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.rho23 - 0.5), 0.0, 1e-15);
}

TEST(TwoQubitState, PureStateSpectrum) {
    const TwoQubitState s = two_qubit_state({0.6, complex(0.0, 0.8)});
    // Independent 2x2 eigen-solve of the single-excitation block.
    Eigen::Matrix2cd block;
    block << s.rho22, s.rho23, std::conj(s.rho23), s.rho33;
    const Eigen::Vector2d direct = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(block).eigenvalues();
    const auto closed = s.eigenvalues();
    EXPECT_NEAR(closed[1], 1.0, 1e-12);
    EXPECT_NEAR(closed[2], 0.0, 1e-12);
    EXPECT_NEAR(closed[1], direct[1], 1e-12);
    EXPECT_NEAR(closed[2], direct[0], 1e-12);
}

TEST(TwoQubitState, InvariantsOnRandomMixedStates) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> loss(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        complex c1(normal(rng), normal(rng)), c2(normal(rng), normal(rng));
        const double scale = std::sqrt(loss(rng) / (std::norm(c1) + std::norm(c2)));
        const TwoQubitState s = two_qubit_state({c1 * scale, c2 * scale});
        EXPECT_NEAR(s.rho22 + s.rho33 + s.rho44, 1.0, 1e-9);
        EXPECT_GE(s.rho44, -1e-12);
        EXPECT_LE(std::norm(s.rho23), s.rho22 * s.rho33 + 1e-12);

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(s.matrix());
        auto closed = s.eigenvalues();
        std::sort(closed.begin(), closed.end());
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(closed[static_cast<std::size_t>(k)], eig.eigenvalues()[k], 1e-9);
    }
}

TEST(TwoQubitState, RejectsOverNormalizedPair) {
    EXPECT_THROW(two_qubit_state({1.0, 0.1}), std::invalid_argument);
}

TEST(EnergyVariation, Basics) {
    EXPECT_EQ(energy_variation({1.0, 0.0}, InitialState{}, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(energy_variation({0.0, 1.0}, InitialState{}, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(energy_variation({0.0, 1.0}, InitialState{}, 2.5), 2.5);
    // Relative to a half-charged start.
    EXPECT_NEAR(energy_variation({1.0, 0.0}, InitialState{std::numbers::pi / 2, 0.0}, 1.0), -0.5, 1e-15);
}

TEST(EnergyVariation, IndependentOfHamiltonianOffset) {
    // W0 (|c2|^2 - |c2(0)|^2) equals Tr[H rho(t)] - Tr[H rho(0)] for H and H + c 1.
    const double omega0 = 1.7;
    const AmplitudePair later{complex(0.3, 0.1), complex(0.2, -0.7)};
    const InitialState init{0.9, 0.2};
    for (double offset : {0.0, 3.0, -11.0}) {
        const Eigen::Matrix2cd h = battery_hamiltonian(omega0) + offset * Eigen::Matrix2cd::Identity();
        const double direct = (h * battery_state(later).matrix()).trace().real() -
                              (h * battery_state(init.amplitudes()).matrix()).trace().real();
        EXPECT_NEAR(energy_variation(later, init, omega0), direct, 1e-12);
    }
}

TEST(AveragePower, Basics) {
    EXPECT_DOUBLE_EQ(average_power(0.5, 2.0), 0.25);
    EXPECT_EQ(average_power(0.0, 0.0), 0.0);
    EXPECT_EQ(average_power(0.3, 0.0), 0.0);
    EXPECT_THROW(average_power(0.1, -1.0), std::domain_error);
}

TEST(AveragePower, RabiFirstPeak) {
    const double eta = 2.0;
    const double t = std::numbers::pi / eta;
    const double s = std::sin(0.5 * eta * t);
    EXPECT_NEAR(average_power(s * s, t), eta / std::numbers::pi, 1e-15);
    EXPECT_NEAR(eta / std::numbers::pi, 0.6366, 1e-4);
}

TEST(ErgotropyTwoLevel, Branches) {
    EXPECT_EQ(ergotropy_two_level(0.5, 1.0), 0.0);
    EXPECT_EQ(ergotropy_two_level(0.3, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(ergotropy_two_level(1.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(ergotropy_two_level(0.75, 1.0), 0.5);
    EXPECT_DOUBLE_EQ(ergotropy_two_level(0.75, 2.0), 1.0);
    EXPECT_DOUBLE_EQ(ergotropy_two_level(AmplitudePair{0.0, complex(0.0, 1.0)}, 1.0), 1.0);
    // Continuous at the threshold.
    EXPECT_LT(ergotropy_two_level(0.5 + 1e-12, 1.0), 1e-11);
}

TEST(ErgotropyGeneral, MaximallyMixedIsPassive) {
    std::mt19937_64 rng(1);
    for (int n : {2, 3, 4}) {
        const Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n);
        EXPECT_NEAR(ergotropy_general(rho, oracle::random_hermitian(rng, n)), 0.0, 1e-12);
    }
}

TEST(ErgotropyGeneral, InvertedQubitMatchesTwoLevelFormula) {
    const Eigen::MatrixXcd rho = QubitState{0.75}.matrix();
    EXPECT_NEAR(ergotropy_general(rho, battery_hamiltonian(1.0)), 0.5, 1e-14);
    // Offset-independent: W is a gap.
    const Eigen::MatrixXcd shifted = battery_hamiltonian(1.0) + 4.0 * Eigen::Matrix2cd::Identity();
    EXPECT_NEAR(ergotropy_general(rho, shifted), 0.5, 1e-14);
}

TEST(ErgotropyGeneral, ZeroOnPassiveDiagonalStates) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Eigen::Vector4d pops(u(rng), u(rng), u(rng), u(rng));
        std::sort(pops.data(), pops.data() + 4, std::greater<>());
        pops /= pops.sum();
        Eigen::Vector4d energies(u(rng), u(rng), u(rng), u(rng));
        std::sort(energies.data(), energies.data() + 4);
        const Eigen::MatrixXcd rho = pops.cast<complex>().asDiagonal();
        const Eigen::MatrixXcd h = energies.cast<complex>().asDiagonal();
        EXPECT_NEAR(ergotropy_general(rho, h), 0.0, 1e-12);
    }
}

TEST(ErgotropyGeneral, NonNegativeAndMatchesPassiveEnergyGap) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 3;
        const Eigen::MatrixXcd rho = oracle::random_density(rng, n);
        const Eigen::MatrixXcd h = oracle::random_hermitian(rng, n);
        const double w = ergotropy_general(rho, h);
        EXPECT_GE(w, 0.0);
        const double gap = (h * rho).trace().real() - oracle::passive_energy(rho, h);
        EXPECT_NEAR(w, gap, 1e-10);
        const Eigen::MatrixXcd sigma = passive_state(rho, h);
        EXPECT_NEAR((h * sigma).trace().real(), oracle::passive_energy(rho, h), 1e-10);
    }
}

TEST(ErgotropyGeneral, PassiveEnergyIsUnitaryInvariant) {
    std::mt19937_64 rng(12);
    for (int n : {2, 4}) {
        for (int i = 0; i < 50; ++i) {
            const Eigen::MatrixXcd rho = oracle::random_density(rng, n);
            const Eigen::MatrixXcd h = oracle::random_hermitian(rng, n);
            const Eigen::MatrixXcd u = oracle::random_unitary(rng, n);
            const Eigen::MatrixXcd rotated = u * rho * u.adjoint();
            const double e_ref = (h * passive_state(rho, h)).trace().real();
            const double e_rot = (h * passive_state(rotated, h)).trace().real();
            EXPECT_NEAR(e_ref, e_rot, 1e-10);
            EXPECT_NEAR(ergotropy_general(rotated, h), (h * rotated).trace().real() - e_ref, 1e-10);
        }
    }
}

TEST(ErgotropyGeneral, BruteForceUnitaryMinimization) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 20; ++i) {
        const Eigen::Matrix2cd rho = oracle::random_qubit_state(rng);
        const Eigen::Matrix2cd h = oracle::random_hermitian(rng, 2);
        const double passive = (h * passive_state(rho, h)).trace().real();
        const double brute = oracle::brute_force_min_energy(rho, h);
        EXPECT_GE(brute - passive, -1e-6);
        EXPECT_LE(brute - passive, 1e-3);
    }
}

TEST(ErgotropyGeneral, RejectsInvalidInput) {
    const Eigen::MatrixXcd h = battery_hamiltonian(1.0);
    Eigen::MatrixXcd non_hermitian(2, 2);
    non_hermitian << 0.5, 0.2, 0.0, 0.5;
    EXPECT_THROW(ergotropy_general(non_hermitian, h), std::invalid_argument);
    Eigen::MatrixXcd bad_trace = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(ergotropy_general(bad_trace, h), std::invalid_argument);
    Eigen::MatrixXcd negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(ergotropy_general(negative, h), std::invalid_argument);
    EXPECT_THROW(ergotropy_general(Eigen::MatrixXcd::Identity(3, 3) / 3.0, h), std::invalid_argument);
}

TEST(ErgotropyGeneral, TieOrderDoesNotChangeValue) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho.diagonal() << 0.1, 0.4, 0.1, 0.4;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(4, 4);
    h.diagonal() << 0.0, 1.0, 2.0, 3.0;
    // Passive energy 0.4*0 + 0.4*1 + 0.1*2 + 0.1*3 = 0.9; energy 0.4 + 0.2 + 1.2 = 1.8.
    EXPECT_NEAR(ergotropy_general(rho, h), 0.9, 1e-12);
}

TEST(Metrics, FreeTrajectoryIsAllZero) {
    const Trajectory t = solve_ode_aux(SystemParams{}, InitialState{}, TimeGrid(5.0, 100));
    const MetricsSeries m = metrics(t, 1.0);
    ASSERT_EQ(m.times.size(), 101u);
    for (std::size_t k = 0; k < m.times.size(); ++k) {
        EXPECT_EQ(m.delta_e[k], 0.0);
        EXPECT_EQ(m.power[k], 0.0);
        EXPECT_EQ(m.ergotropy[k], 0.0);
    }
}

TEST(Metrics, ErgotropyFormulasAgreeOnTrajectory) {
    SystemParams p;
    p.eta = 1.5;
    p.g1 = p.g2 = 0.7;
    const Trajectory t = solve_ode_aux(p, InitialState{}, TimeGrid(20.0, 4000));
    const MetricsSeries m = metrics(t, 1.0);
    const Eigen::MatrixXcd h = battery_hamiltonian(1.0);
    for (std::size_t k = 0; k < t.amplitudes.size(); ++k) {
        const double general = ergotropy_general(battery_state(t.amplitudes[k]).matrix(), h);
        EXPECT_NEAR(general, m.ergotropy[k], 1e-9);
        EXPECT_GE(m.delta_e[k], 0.0);
        EXPECT_LE(m.delta_e[k], 1.0);
        EXPECT_LE(m.ergotropy[k], 1.0);
    }
}

TEST(Metrics, StrongDirectCouplingReachesInversion) {
    SystemParams p;
    p.eta = 2.0;
    p.g1 = p.g2 = 0.7;
    const MetricsSeries m = metrics(solve_ode_aux(p, InitialState{}, TimeGrid(20.0, 8000)), 1.0);
    EXPECT_GT(*std::max_element(m.ergotropy.begin(), m.ergotropy.end()), 0.0);
}

TEST(Metrics, StrongBatteryDampingStaysPassive) {
    SystemParams p;
    p.eta = 1.5;
    p.g1 = 0.7;
    for (double g2 : {1.0, 1.5, 2.0}) {
        p.g2 = g2;
        const MetricsSeries m = metrics(solve_ode_aux(p, InitialState{}, TimeGrid(20.0, 8000)), 1.0);
        EXPECT_EQ(*std::max_element(m.ergotropy.begin(), m.ergotropy.end()), 0.0) << "g2 = " << g2;
    }
}

TEST(Metrics, EnergyVariationStaysInRangeForMixedStart) {
    SystemParams p;
    p.eta = 1.0;
    p.g1 = 0.5;
    p.g2 = 0.9;
    p.delta = 0.4;
    const InitialState init{2.0, 0.5};
    const double start = std::norm(init.amplitudes().c2);
    const MetricsSeries m = metrics(solve_ode_aux(p, init, TimeGrid(20.0, 4000)), 1.0);
    for (double de : m.delta_e) {
        EXPECT_GE(de, -start - 1e-12);
        EXPECT_LE(de, 1.0 - start + 1e-12);
    }
}

}  // namespace
}  // namespace qbattery
