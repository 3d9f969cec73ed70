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

#include "qbattery/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "qbattery/observables.hpp"

namespace qbattery {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = lo + step * static_cast<double>(k);
    if (n > 1) out.back() = hi;
    return out;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count && !failed; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

SweepPoint maximize_over_time(const SystemParams& params, const InitialState& initial,
                              const TimeGrid& grid, const SweepOptions& options) {
    const Trajectory traj = solve(options.solver, params, initial, grid, options.solver_options);
    const double start = std::norm(initial.amplitudes().c2);

    SweepPoint point;
    point.params = params;
    std::size_t best = 0;
    double best_pop = -1.0;
    for (std::size_t k = 0; k < traj.amplitudes.size(); ++k) {
        const double p = std::norm(traj.amplitudes[k].c2);
        if (p > best_pop) {
            best_pop = p;
            best = k;
        }
    }
    // Both metrics are increasing functions of |C2|^2, so they peak together.
    point.delta_e_max = options.w0 * (best_pop - start);
    point.w_max = ergotropy_two_level(best_pop, options.w0);
    point.t_of_wmax = grid.time(best);
    point.c2sq_at_wmax = best_pop;
    point.rho22_at_wmax = std::norm(traj.amplitudes[best].c1);
    return point;
}

namespace {

SweepPoint guarded_point(const SystemParams& params, const InitialState& initial, const TimeGrid& grid,
                         const SweepOptions& options) {
    try {
        return maximize_over_time(params, initial, grid, options);
    } catch (const std::exception& e) {
        SweepPoint failed;
        failed.params = params;
        failed.ok = false;
        failed.error = e.what();
        return failed;
    }
}

bool active(const SweepPoint& p, double epsilon) { return p.ok && p.w_max > epsilon; }

}  // namespace

std::vector<SweepPoint> scan_delta(const SystemParams& base, std::span<const double> deltas,
                                   const InitialState& initial, const TimeGrid& grid,
                                   const SweepOptions& options) {
    std::vector<SweepPoint> out(deltas.size());
    parallel_for(deltas.size(), options.threads, [&](std::size_t i) {
        SystemParams p = base;
        p.delta = deltas[i];
        out[i] = guarded_point(p, initial, grid, options);
    });
    return out;
}

std::optional<CriticalPoint> find_critical_detuning(const SystemParams& base,
                                                    const CriticalSearch& search,
                                                    const InitialState& initial, const TimeGrid& grid,
                                                    const SweepOptions& options) {
    std::vector<ValidationIssue> issues;
    if (!(search.delta_min < search.delta_max))
        issues.push_back({"sweep.delta_max", "delta_max must exceed delta_min"});
    if (!(search.epsilon > 0.0)) issues.push_back({"sweep.epsilon", "epsilon must be positive"});
    if (!(search.resolution > 0.0)) issues.push_back({"sweep.resolution", "resolution must be positive"});
    if (search.coarse_points < 2) issues.push_back({"sweep.coarse_points", "need at least 2 coarse points"});
    if (!issues.empty()) throw ValidationError(std::move(issues));

    const auto coarse = linspace(search.delta_min, search.delta_max, search.coarse_points);
    const auto points = scan_delta(base, coarse, initial, grid, options);

    CriticalPoint cp;
    for (std::size_t i = 0; i < coarse.size(); ++i) cp.samples.emplace_back(coarse[i], points[i].w_max);

    const auto first = std::find_if(points.begin(), points.end(),
                                    [&](const SweepPoint& p) { return active(p, search.epsilon); });
    if (first == points.end()) return std::nullopt;
    const auto idx = static_cast<std::size_t>(first - points.begin());

    for (std::size_t i = idx + 1; i + 1 < points.size(); ++i) {
        if (!active(points[i], search.epsilon) && active(points[i + 1], search.epsilon)) {
            cp.multiple_onsets = true;
            break;
        }
    }

    if (idx == 0) {
        cp.at_lower_edge = true;
        cp.delta_c = cp.bracket_lo = cp.bracket_hi = coarse[0];
        cp.jump = points[0].w_max;
        return cp;
    }

    double lo = coarse[idx - 1];
    double hi = coarse[idx];
    double jump = points[idx].w_max;
    while (hi - lo > search.resolution) {
        const double mid = 0.5 * (lo + hi);
        SystemParams p = base;
        p.delta = mid;
        const SweepPoint sp = guarded_point(p, initial, grid, options);
        cp.samples.emplace_back(mid, sp.w_max);
        if (active(sp, search.epsilon)) {
            hi = mid;
            jump = sp.w_max;
        } else {
            lo = mid;
        }
    }
    cp.bracket_lo = lo;
    cp.bracket_hi = hi;
    cp.delta_c = hi;
    cp.jump = jump;
    std::sort(cp.samples.begin(), cp.samples.end());
    return cp;
}

std::vector<double> derivative_wmax(std::span<const SweepPoint> scan) {
    if (scan.size() < 3) throw std::invalid_argument("derivative_wmax: need at least 3 points");
    const double h = scan[1].params.delta - scan[0].params.delta;
    if (!(std::abs(h) > 0.0)) throw std::invalid_argument("derivative_wmax: zero grid spacing");
    for (std::size_t k = 1; k < scan.size(); ++k) {
        const double step = scan[k].params.delta - scan[k - 1].params.delta;
        if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("derivative_wmax: detuning grid is not uniform");
    }
    const std::size_t n = scan.size();
    std::vector<double> d(n);
    d[0] = (scan[1].w_max - scan[0].w_max) / h;
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (scan[k + 1].w_max - scan[k - 1].w_max) / (2.0 * h);
    d[n - 1] = (scan[n - 1].w_max - scan[n - 2].w_max) / h;
    return d;
}

PhaseDiagram phase_diagram(std::span<const double> etas, std::span<const double> deltas,
                           const SystemParams& base, const InitialState& initial,
                           const TimeGrid& grid, const SweepOptions& options, double epsilon) {
    PhaseDiagram out;
    out.eta_axis.assign(etas.begin(), etas.end());
    out.delta_axis.assign(deltas.begin(), deltas.end());
    out.cells.resize(etas.size() * deltas.size());

    parallel_for(out.cells.size(), options.threads, [&](std::size_t i) {
        SystemParams p = base;
        p.eta = etas[i / deltas.size()];
        p.delta = deltas[i % deltas.size()];
        out.cells[i] = guarded_point(p, initial, grid, options);
    });

    out.boundary.reserve(etas.size());
    for (std::size_t r = 0; r < etas.size(); ++r) {
        BoundaryPoint b{etas[r], std::nullopt};
        for (std::size_t c = 0; c < deltas.size(); ++c) {
            if (active(out.at(r, c), epsilon)) {
                b.delta_onset = deltas[c];
                break;
            }
        }
        out.boundary.push_back(b);
    }
    return out;
}

}  // namespace qbattery
