#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "sqzrot/csv.hpp"
#include "sqzrot/deconvolution.hpp"
#include "sqzrot/errors.hpp"
#include "sqzrot/langevin.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

enum class DphiMode { scalar, langevin_derived };

// Run parameters for the CLI. Flat `key = value` file with [section] headers;
// paths are resolved relative to the config file's directory.
struct RunConfig {
    std::optional<std::string> trace_path;        // [inputs] trace
    std::optional<std::string> coefficients_path; // [inputs] coefficients

    DeconvolutionConfig deconv;

    DphiMode dphi_mode = DphiMode::scalar;
    double dphi = 0.2 * constants::pi;
    double lock_omega = 1.0;

    MediumParams medium;
    double phi0 = 0.0;
    int steps = 1000;

    double omega_min = 0.25, omega_max = 30.0, omega_step = 0.25;
    double sweep_delta_min = -30.0, sweep_delta_max = 40.0, sweep_delta_step = 0.25;
    std::vector<double> table_deltas = {0.0, -4.0, -12.0, -20.0};
    double delta = -4.0; // detuning for cmd_spectrum / cmd_phase_compare

    std::string out_dir = "out";

    std::vector<double> omega_grid() const {
        std::vector<double> g;
        for (double w = omega_min; w <= omega_max + 1e-9 * omega_step; w += omega_step)
            g.push_back(w);
        return g;
    }

    std::vector<double> sweep_delta_grid() const {
        std::vector<double> g;
        for (double d = sweep_delta_min; d <= sweep_delta_max + 1e-9 * sweep_delta_step;
             d += sweep_delta_step)
            g.push_back(d);
        return g;
    }
};

namespace detail {

inline double config_double(const std::string& value, const std::string& key, std::size_t line) {
    return parse_double(value, "config key " + key, line, "cli-io");
}

inline std::vector<double> config_double_list(const std::string& value, const std::string& key,
                                              std::size_t line) {
    std::vector<double> out;
    for (const auto& field : split_commas(value))
        out.push_back(config_double(field, key, line));
    if (out.empty())
        throw data_error("cli-io", "config key " + key + " needs at least one value (line " +
                                       std::to_string(line) + ")");
    return out;
}

} // namespace detail

inline RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cli-io", "cannot open config file " + path);
    auto dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (dir / fp).string();
    };

    RunConfig cfg;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw data_error("cli-io", path + ": malformed section header at line " +
                                               std::to_string(lineno));
            section = detail::trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw data_error("cli-io", path + ": expected key = value at line " +
                                           std::to_string(lineno));
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        std::string qual = section.empty() ? key : section + "." + key;

        if (qual == "inputs.trace") {
            cfg.trace_path = resolve(value);
        } else if (qual == "inputs.coefficients") {
            cfg.coefficients_path = resolve(value);
        } else if (qual == "deconvolution.shift_a") {
            cfg.deconv.shift_a = detail::config_double(value, qual, lineno);
        } else if (qual == "deconvolution.eps") {
            cfg.deconv.eps = detail::config_double(value, qual, lineno);
        } else if (qual == "deconvolution.taper") {
            if (value == "raised_cosine")
                cfg.deconv.taper = Taper::raised_cosine;
            else if (value == "none")
                cfg.deconv.taper = Taper::none;
            else
                throw data_error("cli-io", path + ": unknown taper '" + value + "' at line " +
                                               std::to_string(lineno));
        } else if (qual == "deconvolution.pad_factor") {
            cfg.deconv.pad_factor =
                static_cast<int>(detail::config_double(value, qual, lineno));
        } else if (qual == "phase.dphi_mode") {
            if (value == "scalar")
                cfg.dphi_mode = DphiMode::scalar;
            else if (value == "langevin-derived")
                cfg.dphi_mode = DphiMode::langevin_derived;
            else
                throw data_error("cli-io", path + ": unknown dphi_mode '" + value +
                                               "' at line " + std::to_string(lineno));
        } else if (qual == "phase.dphi") {
            cfg.dphi = detail::config_double(value, qual, lineno);
        } else if (qual == "phase.lock_omega") {
            cfg.lock_omega = detail::config_double(value, qual, lineno);
        } else if (qual == "phase.phi0") {
            cfg.phi0 = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.one_photon_detuning_ghz") {
            cfg.medium.one_photon_detuning_ghz = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.pump_power_mw") {
            cfg.medium.pump_power_mw = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.optical_depth") {
            cfg.medium.optical_depth = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.cell_length_m") {
            cfg.medium.cell_length_m = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.raman_center_mhz") {
            cfg.medium.raman_center_mhz = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.raman_width_mhz") {
            cfg.medium.raman_width_mhz = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.gain_strength") {
            cfg.medium.gain_strength = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.lightshift_scale") {
            cfg.medium.lightshift_scale = detail::config_double(value, qual, lineno);
        } else if (qual == "medium.steps") {
            cfg.steps = static_cast<int>(detail::config_double(value, qual, lineno));
        } else if (qual == "sweep.omega_min") {
            cfg.omega_min = detail::config_double(value, qual, lineno);
        } else if (qual == "sweep.omega_max") {
            cfg.omega_max = detail::config_double(value, qual, lineno);
        } else if (qual == "sweep.omega_step") {
            cfg.omega_step = detail::config_double(value, qual, lineno);
        } else if (qual == "sweep.delta_min") {
            cfg.sweep_delta_min = detail::config_double(value, qual, lineno);
        } else if (qual == "sweep.delta_max") {
            cfg.sweep_delta_max = detail::config_double(value, qual, lineno);
        } else if (qual == "sweep.delta_step") {
            cfg.sweep_delta_step = detail::config_double(value, qual, lineno);
        } else if (qual == "sweep.table_deltas") {
            cfg.table_deltas = detail::config_double_list(value, qual, lineno);
        } else if (qual == "sweep.delta") {
            cfg.delta = detail::config_double(value, qual, lineno);
        } else if (qual == "output.dir") {
            cfg.out_dir = resolve(value);
        } else {
            throw data_error("cli-io", path + ": unknown config key '" + qual + "' at line " +
                                           std::to_string(lineno));
        }
    }

    for (const auto& p : {cfg.trace_path, cfg.coefficients_path})
        if (p && !std::filesystem::exists(*p))
            throw data_error("cli-io", "referenced input file does not exist: " + *p);
    if (!(cfg.omega_step > 0.0) || !(cfg.omega_max >= cfg.omega_min))
        throw data_error("cli-io", path + ": invalid omega sweep grid");
    if (!(cfg.sweep_delta_step > 0.0) || !(cfg.sweep_delta_max >= cfg.sweep_delta_min))
        throw data_error("cli-io", path + ": invalid delta sweep grid");
    cfg.deconv.validate();
    return cfg;
}

} // namespace sqzrot
