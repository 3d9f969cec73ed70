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

// Run configuration for the qbattery command-line tool.
//
// Config files are INI-style:
//
//   [system]   omega0 eta g1 g2 gamma delta cross_sign(common|bracket)
//   [initial]  theta phi
//   [grid]     t_end n_steps
//   [sweep]    delta_min delta_max delta_step resolution epsilon
//   [diagram]  eta_min eta_max eta_points delta_min delta_max delta_points
//   [output]   path format(csv|json)
//   [run]      solver(ode|laplace|quadrature) threads tolerance
//
// Every key is optional; unknown sections or keys are rejected.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/dynamics.hpp"

namespace qbattery::cli {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view text);

struct SweepSection {
    double delta_min = 0.0;
    double delta_max = 2.0;
    double delta_step = 0.05;
    double resolution = 0.01;
    double epsilon = 1e-6;

    std::vector<double> deltas() const;
    bool operator==(const SweepSection&) const = default;
};

struct DiagramSection {
    double eta_min = 0.0;
    double eta_max = 2.0;
    std::size_t eta_points = 30;
    double delta_min = 0.0;
    double delta_max = 2.0;
    std::size_t delta_points = 30;

    bool operator==(const DiagramSection&) const = default;
};

struct RunConfig {
    SystemParams system;
    InitialState initial;
    double t_end = 20.0;
    std::size_t n_steps = 8000;
    SweepSection sweep;
    DiagramSection diagram;
    std::string output_path;  // empty: derived from the command name
    OutputFormat format = OutputFormat::Csv;
    SolverKind solver = SolverKind::Ode;
    unsigned threads = 0;
    double tolerance = 1e-4;  // cross-validation threshold for `validate`

    /// Parameters with every rate divided by gamma (gamma = 1).
    SystemParams scaled_system() const;
    TimeGrid grid() const { return {t_end, n_steps}; }

    bool operator==(const RunConfig&) const = default;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered (section.key, value) pairs covering every field of the config.
std::vector<std::pair<std::string, std::string>> to_entries(const RunConfig& config);

/// Applies one "section.key" assignment. Throws ValidationError naming the
/// field for unknown keys or unparsable values.
void apply_entry(RunConfig& config, const std::string& dotted_key, const std::string& value);

RunConfig parse_config(std::istream& in);
/// Throws IoError when the file cannot be opened.
RunConfig load_config(const std::filesystem::path& path);

/// Rebuilds a config from the "# key = value" header of an output file.
RunConfig parse_metadata(std::istream& in);

/// Model-core validation plus grid and command-section checks, with field paths.
std::vector<ValidationIssue> validate_config(const RunConfig& config);

/// Locale-independent decimal text with 15 significant digits.
std::string format_number(double value);

}  // namespace qbattery::cli
