#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "saflow/errors.hpp"
#include "saflow/flow.hpp"
#include "saflow/initial_data.hpp"
#include "saflow/scalar_pde.hpp"

namespace saflow {

inline const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds = {
        "run-flow",      "run-scalar",     "run-filament", "hasimoto-compare",
        "epsilon-study", "identity-check", "convergence"};
    return cmds;
}

/// Tolerances and study knobs. Defaults pin the acceptance values; a config
/// may override them explicitly.
struct StudyOptions {
    std::vector<double> epsilons{1e-2, 1e-3, 1e-4};
    std::size_t samples = 1000;
    double drift_tol = 1e-4;
    double mass_drift_tol = 1e-8;
    double hasimoto_tol = 5e-3;
    double traveling_wave_tol = 1e-4;
    double arclength_tol = 1e-4;
    double commute_tol = 1e-3;
    double identity_tol = 1e-12;
    int dt_levels = 3;
};

struct RunConfig {
    std::string command;

    std::string geometry_kind = "sphere2";
    int hsf_n = 1;
    double hsf_c = 4.0;

    std::string initial_family;
    ParamMap initial_params;

    FlowParams flow;
    ScalarParams scalar;

    std::size_t grid_m = 128;
    double dt = 0.0;  // 0 = automatic
    double t_end = 0.1;
    std::size_t snapshot_stride = 0;
    std::size_t energy_stride = 100;
    bool allow_unstable_dt = false;

    std::string out_dir = "out";
    long long seed = 0;

    StudyOptions study;

    TargetGeometry geometry() const {
        if (geometry_kind == "sphere2") return TargetGeometry::sphere2();
        if (geometry_kind == "flat-torus2") return TargetGeometry::flat_torus2();
        if (geometry_kind == "poincare-disk") return TargetGeometry::poincare_disk();
        if (geometry_kind == "holomorphic-space-form")
            return TargetGeometry::holomorphic_space_form(hsf_n, hsf_c);
        throw ConfigError("unknown geometry kind '" + geometry_kind + "'");
    }

    StepperConfig stepper() const {
        StepperConfig s;
        s.dt = dt;
        s.t_end = t_end;
        s.snapshot_stride = snapshot_stride;
        s.energy_stride = energy_stride;
        s.allow_unstable_dt = allow_unstable_dt;
        return s;
    }

    /// Full resolved configuration as ordered key-value pairs; embedded in every
    /// artifact header and in summary.json so runs are reproducible byte for byte.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line);
    }
}

inline long long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return i;
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line);
    }
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("expected a boolean (true/false), got '" + v + "'", line);
}

inline std::vector<double> parse_double_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty entry in list '" + v + "'", line);
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) throw ConfigError("empty list", line);
    return out;
}

}  // namespace detail

inline std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    using detail::format_double;
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", command);
    kv.emplace_back("geometry.kind", geometry_kind);
    if (geometry_kind == "holomorphic-space-form") {
        kv.emplace_back("geometry.n", std::to_string(hsf_n));
        kv.emplace_back("geometry.c", format_double(hsf_c));
    }
    kv.emplace_back("initial.family", initial_family);
    for (const auto& [k, v] : initial_params)
        kv.emplace_back("initial." + k, format_double(v));
    kv.emplace_back("flow.alpha", format_double(flow.alpha));
    kv.emplace_back("flow.beta", format_double(flow.beta));
    kv.emplace_back("flow.gamma", format_double(flow.gamma));
    kv.emplace_back("flow.epsilon", format_double(flow.epsilon));
    kv.emplace_back("scalar.alpha", format_double(scalar.alpha));
    kv.emplace_back("scalar.beta", format_double(scalar.beta));
    kv.emplace_back("scalar.gamma", format_double(scalar.gamma));
    kv.emplace_back("scalar.K", format_double(scalar.K));
    kv.emplace_back("stepper.m", std::to_string(grid_m));
    kv.emplace_back("stepper.dt", format_double(dt));
    kv.emplace_back("stepper.t_end", format_double(t_end));
    kv.emplace_back("stepper.snapshot_stride", std::to_string(snapshot_stride));
    kv.emplace_back("stepper.energy_stride", std::to_string(energy_stride));
    kv.emplace_back("stepper.allow_unstable_dt", allow_unstable_dt ? "true" : "false");
    kv.emplace_back("output.dir", out_dir);
    kv.emplace_back("output.seed", std::to_string(seed));
    std::string eps;
    for (std::size_t i = 0; i < study.epsilons.size(); ++i)
        eps += (i ? "," : "") + format_double(study.epsilons[i]);
    kv.emplace_back("study.epsilons", eps);
    kv.emplace_back("study.samples", std::to_string(study.samples));
    kv.emplace_back("study.drift_tol", format_double(study.drift_tol));
    kv.emplace_back("study.mass_drift_tol", format_double(study.mass_drift_tol));
    kv.emplace_back("study.hasimoto_tol", format_double(study.hasimoto_tol));
    kv.emplace_back("study.traveling_wave_tol", format_double(study.traveling_wave_tol));
    kv.emplace_back("study.arclength_tol", format_double(study.arclength_tol));
    kv.emplace_back("study.commute_tol", format_double(study.commute_tol));
    kv.emplace_back("study.identity_tol", format_double(study.identity_tol));
    kv.emplace_back("study.dt_levels", std::to_string(study.dt_levels));
    return kv;
}

/// Parses the flat sectioned key = value format. Unknown sections or keys are
/// hard errors with the offending line number; there is no silent typo lane.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("malformed section header '" + s + "'", line);
            section = detail::trim(s.substr(1, s.size() - 2));
            if (section != "geometry" && section != "initial" && section != "flow" &&
                section != "scalar" && section != "stepper" && section != "output" &&
                section != "study")
                throw ConfigError("unknown section '" + section + "'", line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value' in '" + s + "'", line);
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line);

        if (section.empty()) {
            if (key == "command") {
                cfg.command = value;
            } else {
                throw ConfigError("unknown key '" + key + "'", line);
            }
        } else if (section == "geometry") {
            if (key == "kind") {
                cfg.geometry_kind = value;
            } else if (key == "n") {
                cfg.hsf_n = static_cast<int>(detail::parse_int(value, line));
            } else if (key == "c") {
                cfg.hsf_c = detail::parse_double(value, line);
            } else {
                throw ConfigError("unknown key 'geometry." + key + "'", line);
            }
        } else if (section == "initial") {
            if (key == "family") {
                cfg.initial_family = value;
            } else {
                cfg.initial_params[key] = detail::parse_double(value, line);
            }
        } else if (section == "flow") {
            if (key == "alpha") cfg.flow.alpha = detail::parse_double(value, line);
            else if (key == "beta") cfg.flow.beta = detail::parse_double(value, line);
            else if (key == "gamma") cfg.flow.gamma = detail::parse_double(value, line);
            else if (key == "epsilon") cfg.flow.epsilon = detail::parse_double(value, line);
            else throw ConfigError("unknown key 'flow." + key + "'", line);
        } else if (section == "scalar") {
            if (key == "alpha") cfg.scalar.alpha = detail::parse_double(value, line);
            else if (key == "beta") cfg.scalar.beta = detail::parse_double(value, line);
            else if (key == "gamma") cfg.scalar.gamma = detail::parse_double(value, line);
            else if (key == "K") cfg.scalar.K = detail::parse_double(value, line);
            else throw ConfigError("unknown key 'scalar." + key + "'", line);
        } else if (section == "stepper") {
            if (key == "m") cfg.grid_m = static_cast<std::size_t>(detail::parse_int(value, line));
            else if (key == "dt") cfg.dt = detail::parse_double(value, line);
            else if (key == "t_end") cfg.t_end = detail::parse_double(value, line);
            else if (key == "snapshot_stride")
                cfg.snapshot_stride = static_cast<std::size_t>(detail::parse_int(value, line));
            else if (key == "energy_stride")
                cfg.energy_stride = static_cast<std::size_t>(detail::parse_int(value, line));
            else if (key == "allow_unstable_dt") cfg.allow_unstable_dt = detail::parse_bool(value, line);
            else throw ConfigError("unknown key 'stepper." + key + "'", line);
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = value;
            else if (key == "seed") cfg.seed = detail::parse_int(value, line);
            else throw ConfigError("unknown key 'output." + key + "'", line);
        } else if (section == "study") {
            if (key == "epsilons") cfg.study.epsilons = detail::parse_double_list(value, line);
            else if (key == "samples")
                cfg.study.samples = static_cast<std::size_t>(detail::parse_int(value, line));
            else if (key == "drift_tol") cfg.study.drift_tol = detail::parse_double(value, line);
            else if (key == "mass_drift_tol")
                cfg.study.mass_drift_tol = detail::parse_double(value, line);
            else if (key == "hasimoto_tol")
                cfg.study.hasimoto_tol = detail::parse_double(value, line);
            else if (key == "traveling_wave_tol")
                cfg.study.traveling_wave_tol = detail::parse_double(value, line);
            else if (key == "arclength_tol")
                cfg.study.arclength_tol = detail::parse_double(value, line);
            else if (key == "commute_tol") cfg.study.commute_tol = detail::parse_double(value, line);
            else if (key == "identity_tol")
                cfg.study.identity_tol = detail::parse_double(value, line);
            else if (key == "dt_levels")
                cfg.study.dt_levels = static_cast<int>(detail::parse_int(value, line));
            else throw ConfigError("unknown key 'study." + key + "'", line);
        }
    }

    // structural validation
    if (!cfg.command.empty()) {
        bool ok = false;
        for (const auto& c : known_commands()) ok = ok || c == cfg.command;
        if (!ok) throw ConfigError("unknown command '" + cfg.command + "'");
    }
    if (cfg.flow.epsilon < 0.0) throw ConfigError("flow.epsilon must be >= 0");
    if (cfg.t_end <= 0.0) throw ConfigError("stepper.t_end must be > 0");
    if (cfg.dt < 0.0) throw ConfigError("stepper.dt must be >= 0 (0 = automatic)");
    if (!is_power_of_two(cfg.grid_m) || cfg.grid_m < 16)
        throw ConfigError("stepper.m must be a power of two >= 16");
    for (double e : cfg.study.epsilons)
        if (e < 0.0) throw ConfigError("study.epsilons entries must be >= 0");
    cfg.geometry();  // validates the kind string
    return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace saflow
