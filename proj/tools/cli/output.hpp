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

// Tabular output documents. CSV puts metadata on "# key = value" lines before
// the header row and the optional footer block after the data; JSON carries
// the same content as {"meta", "rows", <footer name>}.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "config.hpp"

namespace qbattery::cli {

using Cell = std::variant<double, std::string>;

struct Footer {
    std::string name;
    /// Empty entries serialize as the marker "<name> = none".
    std::vector<std::pair<std::string, Cell>> entries;
};

struct Document {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::optional<Footer> footer;
};

void write_csv(std::ostream& out, const Document& doc);
void write_json(std::ostream& out, const Document& doc);

/// Creates missing parent directories. Throws IoError on failure.
void write_document(const std::filesystem::path& path, OutputFormat format, const Document& doc);

}  // namespace qbattery::cli
