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

// Three independent solvers for the charger/battery amplitudes in the
// single-excitation sector:
//
//   dC1/dt = -i(eta/2) C2 - int_0^t f(t-t') [g1^2 C1(t') + s g1 g2 C2(t')] dt'
//   dC2/dt = -i(eta/2) C1 - int_0^t f(t-t') [g2^2 C2(t') + s g1 g2 C1(t')] dt'
//
// with f the exponential Lorentzian kernel and s = +1 (common bath) or -1.
//
//  * solve_quadrature: direct Volterra stepping over the full history, O(n^2),
//                      Richardson-extrapolated by default.
//  * solve_ode_aux:    exact Markovian embedding with memory accumulators, RK4, O(n).
//  * solve_laplace:    partial fractions of the Laplace-domain solution.

#include <optional>
#include <string>
#include <vector>

#include "qbattery/model.hpp"

namespace qbattery {

enum class SolverKind { Ode, Laplace, Quadrature };

std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view text);

struct SolverOptions {
    /// Total excitation may exceed one by at most 10 * norm_tol before the
    /// integration is declared divergent.
    double norm_tol = 1e-3;
    /// Combine the quadrature solution with a run at half the step to cancel
    /// its leading O(dt^2) error. Off = the bare second-order scheme.
    bool extrapolate_quadrature = true;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<AmplitudePair> amplitudes;  // one per grid point
    SystemParams params;
    InitialState initial;
    std::string solver;
};

/// Amplitudes plus memory accumulators B_i(t) = int_0^t f(t-t') C_i(t') dt'.
struct AuxState {
    complex c1;
    complex c2;
    complex b1;
    complex b2;
};

Trajectory solve_quadrature(const SystemParams& params, const InitialState& initial,
                            const TimeGrid& grid, const SolverOptions& options = {});

Trajectory solve_ode_aux(const SystemParams& params, const InitialState& initial,
                         const TimeGrid& grid, const SolverOptions& options = {});

/// Right-hand side of the embedded ODE system, exposed for tests and benchmarks.
AuxState aux_derivative(const SystemParams& params, const AuxState& state) noexcept;

struct Pole {
    complex s;   // pole location
    complex r1;  // residue of F1 at s
    complex r2;  // residue of F2 at s
};

/// C_i(t) = sum_k r_i,k exp(s_k t). When two poles (nearly) coincide the
/// residues are not formed; `ode_fallback` is set and evaluate() integrates
/// the embedded ODE instead.
struct LaplaceSolution {
    std::vector<Pole> poles;
    SystemParams params;
    InitialState initial;
    double min_pole_separation = 0.0;
    bool ode_fallback = false;
};

/// Poles closer than this (in units of gamma) trigger the ODE fallback. An
/// exact double root comes back from the eigensolver split by ~sqrt(eps).
inline constexpr double kDegeneratePoleSeparation = 1e-6;

LaplaceSolution solve_laplace(const SystemParams& params, const InitialState& initial);

/// Amplitudes at time t from the pole expansion.
AmplitudePair evaluate_at(const LaplaceSolution& solution, double t);

/// Samples the pole expansion on the grid. Throws SolverError when every
/// residue vanishes.
Trajectory evaluate(const LaplaceSolution& solution, const TimeGrid& grid,
                    const SolverOptions& options = {});

Trajectory solve(SolverKind kind, const SystemParams& params, const InitialState& initial,
                 const TimeGrid& grid, const SolverOptions& options = {});

struct Deviation {
    double population1 = 0.0;  // max_t ||C1|^2 - |C1'|^2|
    double population2 = 0.0;  // max_t ||C2|^2 - |C2'|^2|
    double coherence = 0.0;    // max_t |C1 C2* - C1' C2'*|

    double worst() const noexcept;
};

Deviation max_deviation(const Trajectory& a, const Trajectory& b);

struct CrossValidationReport {
    Deviation ode_vs_quadrature;
    Deviation ode_vs_laplace;
    Deviation laplace_vs_quadrature;
    double tol = 0.0;
    bool laplace_fallback = false;
    bool pass = false;

    double worst() const noexcept;
};

/// Runs all three solvers on the same grid and compares them pairwise.
CrossValidationReport cross_validate(const SystemParams& params, const InitialState& initial,
                                     const TimeGrid& grid, double tol,
                                     const SolverOptions& options = {});

}  // namespace qbattery
