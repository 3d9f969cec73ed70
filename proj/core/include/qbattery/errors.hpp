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

#include <stdexcept>
#include <string>
#include <vector>

namespace qbattery {

/// One violated invariant. `field` is a dotted path such as "system.gamma".
struct ValidationIssue {
    std::string field;
    std::string message;
};

std::string format_issues(const std::vector<ValidationIssue>& issues);

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);

    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// Raised when an integrator leaves the physically allowed region
/// (total excitation above one) or a closed-form evaluation is ill-posed.
class SolverError : public std::runtime_error {
public:
    SolverError(std::string solver, const std::string& what);

    const std::string& solver() const noexcept { return solver_; }

private:
    std::string solver_;
};

}  // namespace qbattery
