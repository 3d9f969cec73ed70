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

#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "qbattery/sweep.hpp"

namespace qbattery::cli {

namespace {

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

double parse_double(const std::string& field, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ValidationError({{field, "expected a number, got '" + text + "'"}});
    return v;
}

std::size_t parse_count(const std::string& field, const std::string& text) {
    unsigned long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ValidationError({{field, "expected a non-negative integer, got '" + text + "'"}});
    return static_cast<std::size_t>(v);
}

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

#define QB_REAL(name, member)                                                            \
    Field {                                                                              \
        name, [](const RunConfig& c) { return shortest(c.member); },                     \
            [](RunConfig& c, const std::string& v) { c.member = parse_double(name, v); } \
    }
#define QB_COUNT(name, member)                                                          \
    Field {                                                                             \
        name, [](const RunConfig& c) { return std::to_string(c.member); },              \
            [](RunConfig& c, const std::string& v) { c.member = parse_count(name, v); } \
    }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        QB_REAL("system.omega0", system.omega0),
        QB_REAL("system.eta", system.eta),
        QB_REAL("system.g1", system.g1),
        QB_REAL("system.g2", system.g2),
        QB_REAL("system.gamma", system.gamma),
        QB_REAL("system.delta", system.delta),
        Field{"system.cross_sign",
              [](const RunConfig& c) { return std::string(to_string(c.system.cross_sign)); },
              [](RunConfig& c, const std::string& v) { c.system.cross_sign = parse_cross_sign(v); }},
        QB_REAL("initial.theta", initial.theta),
        QB_REAL("initial.phi", initial.phi),
        QB_REAL("grid.t_end", t_end),
        QB_COUNT("grid.n_steps", n_steps),
        QB_REAL("sweep.delta_min", sweep.delta_min),
        QB_REAL("sweep.delta_max", sweep.delta_max),
        QB_REAL("sweep.delta_step", sweep.delta_step),
        QB_REAL("sweep.resolution", sweep.resolution),
        QB_REAL("sweep.epsilon", sweep.epsilon),
        QB_REAL("diagram.eta_min", diagram.eta_min),
        QB_REAL("diagram.eta_max", diagram.eta_max),
        QB_COUNT("diagram.eta_points", diagram.eta_points),
        QB_REAL("diagram.delta_min", diagram.delta_min),
        QB_REAL("diagram.delta_max", diagram.delta_max),
        QB_COUNT("diagram.delta_points", diagram.delta_points),
        Field{"output.path", [](const RunConfig& c) { return c.output_path; },
              [](RunConfig& c, const std::string& v) { c.output_path = v; }},
        Field{"output.format", [](const RunConfig& c) { return std::string(to_string(c.format)); },
              [](RunConfig& c, const std::string& v) { c.format = parse_output_format(v); }},
        Field{"run.solver", [](const RunConfig& c) { return std::string(to_string(c.solver)); },
              [](RunConfig& c, const std::string& v) { c.solver = parse_solver_kind(v); }},
        Field{"run.threads", [](const RunConfig& c) { return std::to_string(c.threads); },
              [](RunConfig& c, const std::string& v) {
                  c.threads = static_cast<unsigned>(parse_count("run.threads", v));
              }},
        QB_REAL("run.tolerance", tolerance),
    };
    return table;
}

#undef QB_REAL
#undef QB_COUNT

bool is_config_section(std::string_view key) {
    for (const char* s : {"system.", "initial.", "grid.", "sweep.", "diagram.", "output.", "run."})
        if (key.starts_with(s)) return true;
    return false;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view to_string(OutputFormat f) {
    return f == OutputFormat::Json ? "json" : "csv";
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ValidationError({{"output.format", "expected csv or json, got '" + std::string(text) + "'"}});
}

std::vector<double> SweepSection::deltas() const {
    if (!(delta_step > 0.0) || !(delta_max >= delta_min)) return {};
    const auto n = static_cast<std::size_t>(std::llround((delta_max - delta_min) / delta_step)) + 1;
    return linspace(delta_min, delta_max, n);
}

SystemParams RunConfig::scaled_system() const {
    SystemParams p = system;
    const double g = system.gamma;
    p.eta /= g;
    p.g1 /= g;
    p.g2 /= g;
    p.delta /= g;
    p.gamma = 1.0;
    return p;
}

std::vector<std::pair<std::string, std::string>> to_entries(const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) out.emplace_back(f.key, f.get(config));
    return out;
}

void apply_entry(RunConfig& config, const std::string& dotted_key, const std::string& value) {
    for (const auto& f : fields()) {
        if (dotted_key == f.key) {
            f.set(config, value);
            return;
        }
    }
    throw ValidationError({{dotted_key, "unknown configuration key"}});
}

RunConfig parse_config(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError({{"config", "line " + std::to_string(e.line()) + ": " + e.message()}});
    }
    RunConfig config;
    std::vector<ValidationIssue> issues;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            issues.push_back({section, "key outside of any section"});
            continue;
        }
        if (!is_config_section(section + ".")) {
            issues.push_back({section, "unknown section"});
            continue;
        }
        for (const auto& [key, node] : body) {
            try {
                apply_entry(config, section + "." + key, trim(node.data()));
            } catch (const ValidationError& e) {
                issues.insert(issues.end(), e.issues().begin(), e.issues().end());
            }
        }
    }
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    return parse_config(in);
}

RunConfig parse_metadata(std::istream& in) {
    RunConfig config;
    const auto apply = [&](const std::string& key, const std::string& value) {
        if (is_config_section(key)) apply_entry(config, key, value);
    };

    in >> std::ws;
    if (in.peek() == '{') {
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError({{"meta", std::string(e.what())}});
        }
        for (const auto& [key, value] : doc.at("meta").items())
            if (value.is_string()) apply(key, value.get<std::string>());
        return config;
    }

    std::string line;
    while (std::getline(in, line) && line.starts_with('#')) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        apply(trim(line.substr(1, eq - 1)), trim(line.substr(eq + 1)));
    }
    return config;
}

std::vector<ValidationIssue> validate_config(const RunConfig& config) {
    auto issues = validate(config.system);
    const auto initial = validate(config.initial);
    issues.insert(issues.end(), initial.begin(), initial.end());
    try {
        (void)config.grid();
    } catch (const ValidationError& e) {
        issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }

    const auto finite = [&](const char* field, double v) {
        if (!std::isfinite(v)) {
            issues.push_back({field, "value must be finite"});
            return false;
        }
        return true;
    };
    const auto& s = config.sweep;
    if (finite("sweep.delta_min", s.delta_min) && finite("sweep.delta_max", s.delta_max) &&
        s.delta_max < s.delta_min)
        issues.push_back({"sweep.delta_max", "must be >= sweep.delta_min"});
    if (finite("sweep.delta_step", s.delta_step) && !(s.delta_step > 0.0))
        issues.push_back({"sweep.delta_step", "must be positive"});
    if (finite("sweep.resolution", s.resolution) && !(s.resolution > 0.0))
        issues.push_back({"sweep.resolution", "must be positive"});
    if (finite("sweep.epsilon", s.epsilon) && !(s.epsilon > 0.0))
        issues.push_back({"sweep.epsilon", "must be positive"});

    const auto& d = config.diagram;
    if (finite("diagram.eta_min", d.eta_min) && finite("diagram.eta_max", d.eta_max) &&
        d.eta_max < d.eta_min)
        issues.push_back({"diagram.eta_max", "must be >= diagram.eta_min"});
    if (d.eta_min < 0.0) issues.push_back({"diagram.eta_min", "must be non-negative"});
    if (finite("diagram.delta_min", d.delta_min) && finite("diagram.delta_max", d.delta_max) &&
        d.delta_max < d.delta_min)
        issues.push_back({"diagram.delta_max", "must be >= diagram.delta_min"});
    if (d.eta_points == 0) issues.push_back({"diagram.eta_points", "must be at least 1"});
    if (d.delta_points == 0) issues.push_back({"diagram.delta_points", "must be at least 1"});

    if (finite("run.tolerance", config.tolerance) && !(config.tolerance > 0.0))
        issues.push_back({"run.tolerance", "must be positive"});
    return issues;
}

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
    return {buf, res.ptr};
}

}  // namespace qbattery::cli
