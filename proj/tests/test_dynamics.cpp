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

#include <cmath>
#include <numbers>
#include <random>

#include "qbattery/dynamics.hpp"
#include "support/oracles.hpp"

namespace qbattery {
namespace {

constexpr SolverKind kAllSolvers[] = {SolverKind::Ode, SolverKind::Laplace, SolverKind::Quadrature};

SystemParams make(double eta, double g1, double g2, double delta = 0.0) {
    SystemParams p;
    p.eta = eta;
    p.g1 = g1;
    p.g2 = g2;
    p.delta = delta;
    return p;
}

class AllSolvers : public ::testing::TestWithParam<SolverKind> {};

TEST_P(AllSolvers, ClosedSystemIsRabiOscillation) {
    const TimeGrid grid(10.0, 4000);
    const Trajectory t = solve(GetParam(), make(2.0, 0.0, 0.0), InitialState{}, grid);
    ASSERT_EQ(t.amplitudes.size(), grid.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = std::sin(grid.time(k));  // sin(eta t / 2)
        worst = std::max(worst, std::abs(std::norm(t.amplitudes[k].c2) - s * s));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST_P(AllSolvers, DecoupledBatteryStaysEmpty) {
    const Trajectory t = solve(GetParam(), make(0.0, 0.7, 0.0), InitialState{}, TimeGrid(10.0, 2000));
    for (const AmplitudePair& a : t.amplitudes) EXPECT_EQ(a.c2, complex(0.0, 0.0));
}

TEST_P(AllSolvers, SingleQubitDecayMatchesClosedForm) {
    const TimeGrid grid(10.0, 4000);
    for (double delta : {0.0, 0.3, -1.2}) {
        const Trajectory t = solve(GetParam(), make(0.0, 0.7, 0.0, delta), InitialState{}, grid);
        double worst = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const complex expect = oracle::single_qubit_decay(0.7, delta, 1.0, grid.time(k));
            worst = std::max(worst, std::abs(t.amplitudes[k].c1 - expect));
        }
        EXPECT_LT(worst, 1e-6) << "delta = " << delta;
    }
}

TEST_P(AllSolvers, FirstSampleIsInitialState) {
    const InitialState init{0.9, 0.4};
    const Trajectory t = solve(GetParam(), make(1.5, 0.7, 0.7, 0.2), init, TimeGrid(5.0, 100));
    EXPECT_EQ(t.amplitudes.front(), init.amplitudes());
}

TEST_P(AllSolvers, ExcitationNeverGrows) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coupling(0.0, 2.0), detuning(-2.0, 2.0), angle(0.0, 6.0);
    const TimeGrid grid(20.0, 4000);
    for (int trial = 0; trial < 8; ++trial) {
        SystemParams p = make(coupling(rng), coupling(rng), coupling(rng), detuning(rng));
        if (trial % 2) p.cross_sign = CrossSign::BracketPlus;
        const Trajectory t = solve(GetParam(), p, InitialState{angle(rng), angle(rng)}, grid);
        for (const AmplitudePair& a : t.amplitudes) EXPECT_LE(a.excitation(), 1.0 + 1e-9);
    }
}

INSTANTIATE_TEST_SUITE_P(Dynamics, AllSolvers, ::testing::ValuesIn(kAllSolvers),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(OdeSolver, FreeEvolutionKeepsAmplitudes) {
    const InitialState init{1.2, 0.7};
    const Trajectory t = solve_ode_aux(make(0.0, 0.0, 0.0), init, TimeGrid(10.0, 500));
    for (const AmplitudePair& a : t.amplitudes) EXPECT_EQ(a, init.amplitudes());
}

TEST(OdeSolver, ClosedSystemConservesNorm) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> eta(0.1, 3.0);
    for (int i = 0; i < 5; ++i) {
        const Trajectory t = solve_ode_aux(make(eta(rng), 0.0, 0.0), InitialState{0.3, 1.0}, TimeGrid(20.0, 8000));
        for (const AmplitudePair& a : t.amplitudes) EXPECT_NEAR(a.excitation(), 1.0, 1e-9);
    }
}

TEST(OdeSolver, FourthOrderConvergence) {
    const SystemParams p = make(2.0, 0.0, 0.0);
    const LaplaceSolution exact = solve_laplace(p, InitialState{});
    auto error = [&](std::size_t n) {
        const TimeGrid g(10.0, n);
        const Trajectory t = solve_ode_aux(p, InitialState{}, g);
        double worst = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k)
            worst = std::max(worst, std::abs(t.amplitudes[k].c2 - evaluate_at(exact, g.time(k)).c2));
        return worst;
    };
    const double ratio = error(100) / error(200);
    EXPECT_GT(ratio, 14.0);
    EXPECT_LT(ratio, 18.0);
}

TEST(OdeSolver, DivergenceNamesTheStep) {
    try {
        solve_ode_aux(make(0.0, 6.0, 6.0), InitialState{}, TimeGrid(10.0, 4));
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_EQ(e.solver(), "ode");
        EXPECT_NE(std::string(e.what()).find("at step"), std::string::npos);
    }
}

TEST(QuadratureSolver, BareSchemeIsSecondOrder) {
    const SystemParams p = make(1.5, 0.7, 0.7);
    const LaplaceSolution exact = solve_laplace(p, InitialState{});
    SolverOptions bare;
    bare.extrapolate_quadrature = false;
    auto error = [&](std::size_t n, const SolverOptions& opts) {
        const TimeGrid g(10.0, n);
        const Trajectory t = solve_quadrature(p, InitialState{}, g, opts);
        double worst = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k)
            worst = std::max(worst, std::abs(t.amplitudes[k].c2 - evaluate_at(exact, g.time(k)).c2));
        return worst;
    };
    const double ratio = error(200, bare) / error(400, bare);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
    // Extrapolation removes the dt^2 term.
    EXPECT_GT(error(200, {}) / error(400, {}), 7.0);
    EXPECT_LT(error(400, {}), 0.1 * error(400, bare));
}

TEST(LaplaceSolver, RabiPolesAndResidues) {
    const double eta = 2.0;
    const LaplaceSolution sol = solve_laplace(make(eta, 0.0, 0.0), InitialState{});
    ASSERT_FALSE(sol.ode_fallback);
    int matched = 0;
    for (const Pole& p : sol.poles) {
        if (std::abs(p.s - complex(0.0, 0.5 * eta)) < 1e-12 || std::abs(p.s - complex(0.0, -0.5 * eta)) < 1e-12) {
            EXPECT_NEAR(p.r1.real(), 0.5, 1e-12);
            EXPECT_NEAR(p.r1.imag(), 0.0, 1e-12);
            ++matched;
        } else {
            EXPECT_LT(std::abs(p.r1) + std::abs(p.r2), 1e-14);
        }
    }
    EXPECT_EQ(matched, 2);

    const TimeGrid g(10.0, 1000);
    const Trajectory t = evaluate(sol, g);
    for (std::size_t k = 0; k < g.size(); ++k)
        EXPECT_NEAR(std::abs(t.amplitudes[k].c1 - std::cos(0.5 * eta * g.time(k))), 0.0, 1e-12);
}

TEST(LaplaceSolver, SingleQubitPolesMatchFactorization) {
    for (double delta : {0.0, 0.8}) {
        const auto [plus, minus] = oracle::single_qubit_poles(0.7, delta, 1.0);
        const LaplaceSolution sol = solve_laplace(make(0.0, 0.7, 0.0, delta), InitialState{});
        ASSERT_FALSE(sol.ode_fallback);
        bool found_plus = false, found_minus = false;
        for (const Pole& p : sol.poles) {
            if (std::abs(p.s - plus) < 1e-12) found_plus = true;
            else if (std::abs(p.s - minus) < 1e-12) found_minus = true;
            else EXPECT_LT(std::abs(p.r1), 1e-14);
        }
        EXPECT_TRUE(found_plus);
        EXPECT_TRUE(found_minus);
    }
}

TEST(LaplaceSolver, AgreesWithOdeOnChargingParameters) {
    const SystemParams p = make(1.5, 0.7, 0.7);
    const TimeGrid g(20.0, 8000);
    const Trajectory ode = solve_ode_aux(p, InitialState{}, g);
    const Trajectory lap = evaluate(solve_laplace(p, InitialState{}), g);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_LT(std::abs(ode.amplitudes[k].c2 - lap.amplitudes[k].c2), 1e-8);
}

TEST(LaplaceSolver, ResiduesSumToInitialAmplitudesAndPolesAreStable) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> coupling(0.0, 2.5), detuning(-3.0, 3.0), angle(0.0, 6.3);
    for (int i = 0; i < 300; ++i) {
        SystemParams p = make(coupling(rng), coupling(rng), coupling(rng), detuning(rng));
        p.cross_sign = i % 2 ? CrossSign::BracketPlus : CrossSign::CommonBathMinus;
        const InitialState init{angle(rng), angle(rng)};
        const LaplaceSolution sol = solve_laplace(p, init);
        if (sol.ode_fallback) continue;
        complex s1{}, s2{};
        for (const Pole& pole : sol.poles) {
            EXPECT_LE(pole.s.real(), 1e-10);
            s1 += pole.r1;
            s2 += pole.r2;
        }
        EXPECT_LT(std::abs(s1 - init.amplitudes().c1), 1e-9);
        EXPECT_LT(std::abs(s2 - init.amplitudes().c2), 1e-9);
    }
}

TEST(LaplaceSolver, DegeneratePolesFallBackToOde) {
    // eta = 0 and no bath: Q(s) = s^2 (s + z) has a double root at 0.
    const InitialState init{0.8, 0.3};
    const LaplaceSolution sol = solve_laplace(make(0.0, 0.0, 0.0), init);
    EXPECT_TRUE(sol.ode_fallback);
    EXPECT_LT(sol.min_pole_separation, kDegeneratePoleSeparation);
    const Trajectory t = evaluate(sol, TimeGrid(5.0, 50));
    EXPECT_EQ(t.solver, "laplace(ode-fallback)");
    for (const AmplitudePair& a : t.amplitudes) EXPECT_EQ(a, init.amplitudes());
}

TEST(LaplaceSolver, EmptyResiduesAreRejected) {
    LaplaceSolution sol;
    sol.poles = {{complex(-1.0, 0.0), 0.0, 0.0}, {complex(-0.5, 1.0), 0.0, 0.0}};
    EXPECT_THROW(evaluate(sol, TimeGrid(1.0, 10)), SolverError);
}

TEST(PhaseCovariance, DecoupledBatteryPicksUpInitialPhase) {
    const SystemParams p = make(0.0, 0.0, 0.7, 0.4);
    const TimeGrid g(10.0, 2000);
    const double phi = 1.3;
    const Trajectory a = solve_ode_aux(p, InitialState{std::numbers::pi / 2, 0.0}, g);
    const Trajectory b = solve_ode_aux(p, InitialState{std::numbers::pi / 2, phi}, g);
    for (std::size_t k = 0; k < g.size(); ++k)
        EXPECT_LT(std::abs(b.amplitudes[k].c2 - std::polar(1.0, phi) * a.amplitudes[k].c2), 1e-14);
}

TEST(PhaseCovariance, CoupledDynamicsDependOnRelativePhase) {
    const SystemParams p = make(1.5, 0.7, 0.7);
    const TimeGrid g(10.0, 2000);
    const Trajectory a = solve_ode_aux(p, InitialState{std::numbers::pi / 2, 0.0}, g);
    const Trajectory b = solve_ode_aux(p, InitialState{std::numbers::pi / 2, 1.3}, g);
    EXPECT_GT(max_deviation(a, b).population2, 1e-2);
}

TEST(CrossSign, ConventionsProduceDifferentDynamics) {
    SystemParams common = make(1.5, 0.7, 0.7, 0.5);
    SystemParams bracket = common;
    bracket.cross_sign = CrossSign::BracketPlus;
    const TimeGrid g(10.0, 2000);
    EXPECT_GT(max_deviation(solve_ode_aux(common, {}, g), solve_ode_aux(bracket, {}, g)).population2, 1e-2);
    // Both conventions still agree across solvers.
    EXPECT_TRUE(cross_validate(bracket, {}, TimeGrid(10.0, 4000), 1e-4).pass);
}

TEST(CrossValidate, ChargingParametersPass) {
    const auto r = cross_validate(make(1.5, 0.7, 0.7), {}, TimeGrid(10.0, 4000), 1e-4);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.laplace_fallback);
    EXPECT_LT(r.worst(), 1e-4);
}

TEST(CrossValidate, RabiPassesTightTolerance) {
    EXPECT_TRUE(cross_validate(make(2.0, 0.0, 0.0), {}, TimeGrid(10.0, 4000), 1e-8).pass);
}

TEST(CrossValidate, CoarseGridFailsWithReportedDeviation) {
    const auto r = cross_validate(make(1.5, 0.7, 0.7), {}, TimeGrid(10.0, 20), 1e-4);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.worst(), 1e-4);
    EXPECT_GT(r.ode_vs_quadrature.worst(), 1e-4);
}

TEST(SolverKind, RoundTripsNames) {
    for (SolverKind k : kAllSolvers) EXPECT_EQ(parse_solver_kind(to_string(k)), k);
    EXPECT_THROW(parse_solver_kind("euler"), ValidationError);
}

}  // namespace
}  // namespace qbattery
