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

#include "output.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include <json.hpp>

namespace qbattery::cli {

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    return std::get<std::string>(c);
}

// Numbers go through the same 15-digit text as CSV so both formats agree.
nlohmann::ordered_json cell_json(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    const std::string text = format_number(std::get<double>(c));
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{}) return nullptr;  // nan / inf
    return v;
}

}  // namespace

void write_csv(std::ostream& out, const Document& doc) {
    for (const auto& [k, v] : doc.meta) out << "# " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out << (i ? "," : "") << doc.columns[i];
    out << '\n';
    for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
    if (doc.footer) {
        if (doc.footer->entries.empty()) {
            out << "# " << doc.footer->name << " = none\n";
        } else {
            for (const auto& [k, v] : doc.footer->entries)
                out << "# " << doc.footer->name << '.' << k << " = " << cell_text(v) << '\n';
        }
    }
}

void write_json(std::ostream& out, const Document& doc) {
    nlohmann::ordered_json j;
    auto& meta = j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : doc.meta) meta[k] = v;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : doc.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < doc.columns.size(); ++i)
            r[doc.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    if (doc.footer) {
        if (doc.footer->entries.empty()) {
            j[doc.footer->name] = "none";
        } else {
            auto& f = j[doc.footer->name] = nlohmann::ordered_json::object();
            for (const auto& [k, v] : doc.footer->entries) f[k] = cell_json(v);
        }
    }
    out << j.dump(2) << '\n';
}

void write_document(const std::filesystem::path& path, OutputFormat format, const Document& doc) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw IoError("cannot create directory '" + path.parent_path().string() +
                          "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    if (format == OutputFormat::Json)
        write_json(out, doc);
    else
        write_csv(out, doc);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace qbattery::cli
