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

// Time maxima of stored energy and ergotropy, detuning scans with onset
// detection, and (eta, delta) phase diagrams. Grid points are evaluated
// concurrently; results are always returned in grid order and do not depend
// on the worker count.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbattery/dynamics.hpp"

namespace qbattery {

struct SweepOptions {
    SolverKind solver = SolverKind::Ode;
    SolverOptions solver_options{};
    unsigned threads = 0;  // 0 = hardware concurrency
    double w0 = 1.0;
};

/// W_max below or equal to this (in units of W0) counts as zero.
inline constexpr double kDefaultActivityThreshold = 1e-6;

struct SweepPoint {
    SystemParams params;
    double delta_e_max = 0.0;
    double w_max = 0.0;
    /// Time of the largest battery population. This is the ergotropy maximizer
    /// whenever w_max > 0; for passive points it records the closest approach
    /// to inversion.
    double t_of_wmax = 0.0;
    double c2sq_at_wmax = 0.0;
    double rho22_at_wmax = 0.0;
    bool ok = true;
    std::string error;  // set when !ok
};

SweepPoint maximize_over_time(const SystemParams& params, const InitialState& initial,
                              const TimeGrid& grid, const SweepOptions& options = {});

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// One point per detuning; failed points are flagged (ok = false) and the scan continues.
std::vector<SweepPoint> scan_delta(const SystemParams& base, std::span<const double> deltas,
                                   const InitialState& initial, const TimeGrid& grid,
                                   const SweepOptions& options = {});

struct CriticalPoint {
    double delta_c = 0.0;
    double bracket_lo = 0.0;  // inactive (W_max <= epsilon), except at the lower range edge
    double bracket_hi = 0.0;  // active
    double jump = 0.0;        // W_max at bracket_hi
    bool at_lower_edge = false;
    bool multiple_onsets = false;
    /// Every detuning evaluated while bracketing, with its W_max.
    std::vector<std::pair<double, double>> samples;
};

struct CriticalSearch {
    double delta_min = 0.0;
    double delta_max = 2.0;
    double epsilon = kDefaultActivityThreshold;
    double resolution = 0.01;
    std::size_t coarse_points = 41;
};

/// Smallest detuning in range at which W_max exceeds epsilon. A coarse scan
/// brackets the onset; bisection on the activity indicator narrows it to
/// `resolution`. Returns nullopt when no sampled point is active.
std::optional<CriticalPoint> find_critical_detuning(const SystemParams& base,
                                                    const CriticalSearch& search,
                                                    const InitialState& initial, const TimeGrid& grid,
                                                    const SweepOptions& options = {});

/// dW_max/d(delta): central differences inside, one-sided at the ends.
/// Requires at least three points on a uniform detuning grid.
std::vector<double> derivative_wmax(std::span<const SweepPoint> scan);

struct BoundaryPoint {
    double eta = 0.0;
    std::optional<double> delta_onset;  // first active detuning of the row
};

struct PhaseDiagram {
    std::vector<double> eta_axis;
    std::vector<double> delta_axis;
    std::vector<SweepPoint> cells;  // row-major: eta index major, delta index minor
    std::vector<BoundaryPoint> boundary;

    const SweepPoint& at(std::size_t eta_index, std::size_t delta_index) const {
        return cells[eta_index * delta_axis.size() + delta_index];
    }
};

PhaseDiagram phase_diagram(std::span<const double> etas, std::span<const double> deltas,
                           const SystemParams& base, const InitialState& initial,
                           const TimeGrid& grid, const SweepOptions& options = {},
                           double epsilon = kDefaultActivityThreshold);

/// n evenly spaced values from lo to hi inclusive (n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qbattery
