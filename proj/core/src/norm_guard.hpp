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

#include <string>

#include "qbattery/dynamics.hpp"

namespace qbattery::detail {

/// The bath can only absorb excitation; anything above one signals a
/// step size too coarse for the dynamics.
inline void check_excitation(const char* solver, const AmplitudePair& pair, std::size_t step,
                             const SolverOptions& options) {
    const double total = pair.excitation();
    if (!(total <= 1.0 + 10.0 * options.norm_tol)) {
        throw SolverError(solver, "total excitation " + std::to_string(total) +
                                      " exceeds 1 at step " + std::to_string(step) +
                                      "; reduce the time step");
    }
}

}  // namespace qbattery::detail
