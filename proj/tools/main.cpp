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

// qbattery command-line front end.
//
// Precedence, lowest first: built-in defaults, --config file, QBATTERY_*
// environment variables, command-line flags.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace qbattery;
using namespace qbattery::cli;

struct Overrides {
    std::string config;
    std::string out;
    std::string format;
    std::string solver;
    std::string cross_sign;
    std::optional<unsigned> threads;
    std::optional<double> tol;
};

void add_common(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config, "INI config file");
    cmd.add_option("--out", o.out, "output file path");
    cmd.add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--solver", o.solver, "ode, laplace or quadrature (default ode)")
        ->check(CLI::IsMember({"ode", "laplace", "quadrature"}));
    cmd.add_option("--threads", o.threads, "worker threads, 0 = auto");
    cmd.add_option("--cross-sign", o.cross_sign, "common or bracket (default common)")
        ->check(CLI::IsMember({"common", "bracket"}));
}

// Environment values fill options not given on the command line. They are
// checked here rather than by CLI11 so a bad value is reported, not ignored.
void apply_environment(Overrides& o) {
    const auto env = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (v == nullptr || *v == '\0') return std::nullopt;
        return std::string(v);
    };
    const auto fill = [&](std::string& target, const char* name) {
        if (target.empty())
            if (auto v = env(name)) target = *v;
    };
    fill(o.config, "QBATTERY_CONFIG");
    fill(o.out, "QBATTERY_OUT");
    fill(o.format, "QBATTERY_FORMAT");
    fill(o.solver, "QBATTERY_SOLVER");
    fill(o.cross_sign, "QBATTERY_CROSS_SIGN");
    const auto number = [](const char* name, const std::string& text, auto& target) {
        const auto* end = text.data() + text.size();
        const auto res = std::from_chars(text.data(), end, target);
        if (res.ec != std::errc{} || res.ptr != end)
            throw ValidationError({{name, "cannot parse '" + text + "'"}});
    };
    if (!o.threads)
        if (auto v = env("QBATTERY_THREADS")) number("QBATTERY_THREADS", *v, o.threads.emplace());
    if (!o.tol)
        if (auto v = env("QBATTERY_TOL")) number("QBATTERY_TOL", *v, o.tol.emplace());
}

RunConfig resolve(Overrides o) {
    apply_environment(o);
    RunConfig config = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (!o.out.empty()) config.output_path = o.out;
    if (!o.format.empty()) config.format = parse_output_format(o.format);
    if (!o.solver.empty()) config.solver = parse_solver_kind(o.solver);
    if (!o.cross_sign.empty()) config.system.cross_sign = parse_cross_sign(o.cross_sign);
    if (o.threads) config.threads = *o.threads;
    if (o.tol) config.tolerance = *o.tol;
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-Markovian two-qubit quantum battery simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QBATTERY_VERSION);

    Overrides o;
    auto* simulate = app.add_subcommand("simulate", "amplitudes and battery observables over time");
    auto* sweep = app.add_subcommand("sweep", "time maxima versus detuning, with onset detection");
    auto* diagram = app.add_subcommand("phase-diagram", "W_max over an (eta, delta) grid");
    auto* validate = app.add_subcommand("validate", "check the config and cross-validate the solvers");
    for (auto* cmd : {simulate, sweep, diagram, validate}) add_common(*cmd, o);
    validate->add_option("--tol", o.tol, "cross-validation tolerance (default 1e-4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    return run_guarded(
        [&]() -> int {
            const RunConfig config = resolve(o);
            if (*simulate) return cmd_simulate(config, std::cout);
            if (*sweep) return cmd_sweep(config, std::cout);
            if (*diagram) return cmd_phase_diagram(config, std::cout);
            return cmd_validate(config, std::cout);
        },
        std::cerr);
}
