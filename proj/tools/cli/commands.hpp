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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string_view>

#include "config.hpp"
#include "output.hpp"

namespace qbattery::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitSolver = 3,
    kExitIo = 4,
    kExitCheckFailed = 5,  // `validate`: solvers disagree beyond tolerance
};

/// Rows gamma_t, re_c1, im_c1, re_c2, im_c2, c2sq, deltaE, power, ergotropy.
Document simulate_document(const RunConfig& config);

/// Rows per detuning plus a "critical" footer. dWmax_dDelta is "nan" when the
/// scan has fewer than three points.
Document sweep_document(const RunConfig& config);

struct DiagramDocuments {
    Document cells;     // eta_over_gamma, delta_over_gamma, W_max, status
    Document boundary;  // eta_over_gamma, delta_onset, status
};
DiagramDocuments phase_diagram_documents(const RunConfig& config);

/// config.output_path, or "qbattery_<command>.<ext>" when it is empty.
std::filesystem::path output_path(const RunConfig& config, std::string_view command);
/// "<dir>/<stem>_boundary<ext>".
std::filesystem::path boundary_path(const std::filesystem::path& cells_path);

// Each command validates the config, writes its files and prints a short
// summary to `report`. Errors are thrown; see run_guarded.
int cmd_simulate(const RunConfig& config, std::ostream& report);
int cmd_sweep(const RunConfig& config, std::ostream& report);
int cmd_phase_diagram(const RunConfig& config, std::ostream& report);
int cmd_validate(const RunConfig& config, std::ostream& report);

/// Runs fn and maps exceptions to exit codes, printing the message to err.
int run_guarded(const std::function<int()>& fn, std::ostream& err);

}  // namespace qbattery::cli
