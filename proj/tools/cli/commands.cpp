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

#include "commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "qbattery/observables.hpp"
#include "qbattery/sweep.hpp"

#ifndef QBATTERY_VERSION
#define QBATTERY_VERSION "0.0.0"
#endif

namespace qbattery::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_valid_config(const RunConfig& config) {
    auto issues = validate_config(config);
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<std::pair<std::string, std::string>> header(const RunConfig& config,
                                                        std::string_view command,
                                                        std::string_view solver_name) {
    std::vector<std::pair<std::string, std::string>> meta = {
        {"qbattery.version", QBATTERY_VERSION},
        {"qbattery.command", std::string(command)},
        {"qbattery.solver", std::string(solver_name)},
        {"qbattery.norm_tol", format_number(SolverOptions{}.norm_tol)},
        {"qbattery.units", "rates divided by gamma, times multiplied by gamma, energies in omega0"},
    };
    for (auto& e : to_entries(config)) meta.push_back(std::move(e));
    return meta;
}

SweepOptions sweep_options(const RunConfig& config) {
    SweepOptions opts;
    opts.solver = config.solver;
    opts.threads = config.threads;
    opts.w0 = config.system.omega0;
    return opts;
}

std::string status_of(const SweepPoint& p) { return p.ok ? "ok" : "failed"; }

}  // namespace

Document simulate_document(const RunConfig& config) {
    require_valid_config(config);
    const auto params = config.scaled_system();
    const auto traj = solve(config.solver, params, config.initial, config.grid());
    const auto m = metrics(traj, config.system.omega0);

    Document doc;
    doc.meta = header(config, "simulate", traj.solver);
    doc.columns = {"gamma_t", "re_c1", "im_c1", "re_c2", "im_c2",
                   "c2sq",    "deltaE", "power", "ergotropy"};
    doc.rows.reserve(traj.amplitudes.size());
    for (std::size_t k = 0; k < traj.amplitudes.size(); ++k) {
        const auto& a = traj.amplitudes[k];
        doc.rows.push_back({m.times[k], a.c1.real(), a.c1.imag(), a.c2.real(), a.c2.imag(),
                            std::norm(a.c2), m.delta_e[k], m.power[k], m.ergotropy[k]});
    }
    return doc;
}

Document sweep_document(const RunConfig& config) {
    require_valid_config(config);
    const double g = config.system.gamma;
    const auto params = config.scaled_system();
    const auto grid = config.grid();
    const auto opts = sweep_options(config);

    auto deltas = config.sweep.deltas();
    for (auto& d : deltas) d /= g;
    const auto scan = scan_delta(params, deltas, config.initial, grid, opts);
    std::vector<double> slope(scan.size(), kNaN);
    if (scan.size() >= 3) slope = derivative_wmax(scan);

    Document doc;
    doc.meta = header(config, "sweep", to_string(config.solver));
    doc.columns = {"delta_over_gamma", "deltaE_max",    "W_max",        "t_of_Wmax",
                   "c2sq_at_Wmax",     "rho22_at_Wmax", "dWmax_dDelta", "status"};
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const auto& p = scan[i];
        doc.rows.push_back({deltas[i], p.delta_e_max, p.w_max, p.t_of_wmax, p.c2sq_at_wmax,
                            p.rho22_at_wmax, slope[i], status_of(p)});
    }

    Footer footer{"critical", {}};
    const double eps = config.sweep.epsilon;
    std::optional<CriticalPoint> cp;
    if (deltas.size() >= 2) {
        CriticalSearch search;
        search.delta_min = deltas.front();
        search.delta_max = deltas.back();
        search.epsilon = eps;
        search.resolution = config.sweep.resolution / g;
        search.coarse_points = deltas.size();
        cp = find_critical_detuning(params, search, config.initial, grid, opts);
    } else if (scan.size() == 1 && scan[0].ok && scan[0].w_max > eps) {
        cp = CriticalPoint{deltas[0], deltas[0], deltas[0], scan[0].w_max, true, false, {}};
    }
    if (cp) {
        footer.entries = {{"delta_c", cp->delta_c},
                          {"bracket_lo", cp->bracket_lo},
                          {"bracket_hi", cp->bracket_hi},
                          {"jump", cp->jump},
                          {"at_lower_edge", std::string(cp->at_lower_edge ? "true" : "false")},
                          {"multiple_onsets", std::string(cp->multiple_onsets ? "true" : "false")}};
    }
    doc.footer = std::move(footer);
    return doc;
}

DiagramDocuments phase_diagram_documents(const RunConfig& config) {
    require_valid_config(config);
    const double g = config.system.gamma;
    const auto& d = config.diagram;
    const auto etas = linspace(d.eta_min / g, d.eta_max / g, d.eta_points);
    const auto deltas = linspace(d.delta_min / g, d.delta_max / g, d.delta_points);
    const auto diagram = phase_diagram(etas, deltas, config.scaled_system(), config.initial,
                                       config.grid(), sweep_options(config), config.sweep.epsilon);

    DiagramDocuments out;
    out.cells.meta = header(config, "phase-diagram", to_string(config.solver));
    out.cells.columns = {"eta_over_gamma", "delta_over_gamma", "W_max", "status"};
    for (std::size_t r = 0; r < etas.size(); ++r)
        for (std::size_t c = 0; c < deltas.size(); ++c) {
            const auto& p = diagram.at(r, c);
            out.cells.rows.push_back({etas[r], deltas[c], p.ok ? p.w_max : kNaN, status_of(p)});
        }

    out.boundary.meta = out.cells.meta;
    out.boundary.columns = {"eta_over_gamma", "delta_onset", "status"};
    for (const auto& b : diagram.boundary)
        out.boundary.rows.push_back({b.eta, b.delta_onset.value_or(kNaN),
                                     std::string(b.delta_onset ? "onset" : "none")});
    return out;
}

std::filesystem::path output_path(const RunConfig& config, std::string_view command) {
    if (!config.output_path.empty()) return config.output_path;
    std::string name = "qbattery_" + std::string(command);
    for (auto& ch : name)
        if (ch == '-') ch = '_';
    return name + (config.format == OutputFormat::Json ? ".json" : ".csv");
}

std::filesystem::path boundary_path(const std::filesystem::path& cells_path) {
    auto p = cells_path;
    p.replace_filename(cells_path.stem().string() + "_boundary" + cells_path.extension().string());
    return p;
}

int cmd_simulate(const RunConfig& config, std::ostream& report) {
    const auto doc = simulate_document(config);
    const auto path = output_path(config, "simulate");
    write_document(path, config.format, doc);

    double c2max = 0.0, wmax = 0.0, emax = 0.0;
    for (const auto& row : doc.rows) {
        c2max = std::max(c2max, std::get<double>(row[5]));
        emax = std::max(emax, std::get<double>(row[6]));
        wmax = std::max(wmax, std::get<double>(row[8]));
    }
    report << "simulate: " << doc.rows.size() << " rows -> " << path.string() << '\n'
           << "  max |C2|^2 = " << format_number(c2max) << '\n'
           << "  max deltaE = " << format_number(emax) << '\n'
           << "  max ergotropy = " << format_number(wmax) << '\n';
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& report) {
    const auto doc = sweep_document(config);
    const auto path = output_path(config, "sweep");
    write_document(path, config.format, doc);

    std::size_t failed = 0;
    for (const auto& row : doc.rows) failed += std::get<std::string>(row.back()) != "ok";
    report << "sweep: " << doc.rows.size() << " detunings -> " << path.string() << '\n';
    if (doc.footer->entries.empty()) {
        report << "  critical detuning: none\n";
    } else {
        const auto& e = doc.footer->entries;
        report << "  critical detuning: " << format_number(std::get<double>(e[0].second))
               << " (bracket " << format_number(std::get<double>(e[1].second)) << " .. "
               << format_number(std::get<double>(e[2].second)) << ")\n";
    }
    if (failed) report << "  warning: " << failed << " point(s) failed; see status column\n";
    return kExitOk;
}

int cmd_phase_diagram(const RunConfig& config, std::ostream& report) {
    const auto docs = phase_diagram_documents(config);
    const auto path = output_path(config, "phase-diagram");
    const auto bpath = boundary_path(path);
    write_document(path, config.format, docs.cells);
    write_document(bpath, config.format, docs.boundary);

    std::size_t failed = 0;
    for (const auto& row : docs.cells.rows) failed += std::get<std::string>(row.back()) != "ok";
    report << "phase-diagram: " << config.diagram.eta_points << " x " << config.diagram.delta_points
           << " cells -> " << path.string() << '\n'
           << "  boundary -> " << bpath.string() << '\n';
    if (failed) report << "  warning: " << failed << " cell(s) failed; see status column\n";
    return kExitOk;
}

int cmd_validate(const RunConfig& config, std::ostream& report) {
    const auto issues = validate_config(config);
    if (!issues.empty()) {
        report << "validation: FAIL\n";
        for (const auto& i : issues) report << "  " << i.field << ": " << i.message << '\n';
        return kExitValidation;
    }
    report << "validation: ok\n";

    const auto r = cross_validate(config.scaled_system(), config.initial, config.grid(),
                                  config.tolerance);
    const auto line = [&](const char* name, const Deviation& d) {
        report << "  " << name << ": population1 " << format_number(d.population1)
               << ", population2 " << format_number(d.population2) << ", coherence "
               << format_number(d.coherence) << '\n';
    };
    report << "cross-validation (tol " << format_number(config.tolerance) << ", "
           << config.n_steps << " steps):\n";
    line("ode vs quadrature", r.ode_vs_quadrature);
    line("ode vs laplace", r.ode_vs_laplace);
    line("laplace vs quadrature", r.laplace_vs_quadrature);
    if (r.laplace_fallback) report << "  laplace: near-degenerate poles, used ode fallback\n";
    report << "  worst deviation " << format_number(r.worst()) << '\n'
           << "cross-validation: " << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? kExitOk : kExitCheckFailed;
}

int run_guarded(const std::function<int()>& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        err << "error: invalid configuration\n";
        for (const auto& i : e.issues()) err << "  " << i.field << ": " << i.message << '\n';
        return kExitValidation;
    } catch (const SolverError& e) {
        err << "error: solver " << e.solver() << ": " << e.what() << '\n';
        return kExitSolver;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}

}  // namespace qbattery::cli
