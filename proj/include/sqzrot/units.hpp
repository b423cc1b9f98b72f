#pragma once

#include <cmath>
#include <string>

#include "sqzrot/errors.hpp"

namespace sqzrot {

namespace constants {

// CODATA 2018 reduced Planck constant, J s.
inline constexpr double hbar = 1.054571817e-34;

// 85Rb ground-state hyperfine splitting, MHz.
inline constexpr double hyperfine_splitting_mhz = 3036.0;

// Vapor cell length, m.
inline constexpr double default_cell_length_m = 0.0125;

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace constants

inline void require_finite(double x, const char* what, const char* module) {
    if (!std::isfinite(x))
        throw argument_error(module, std::string(what) + " is not finite");
}

// Noise powers are relative to the shot-noise limit: 0 dB == linear 1.0.
inline double db_to_linear(double db) {
    require_finite(db, "noise power (dB)", "core-model");
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double linear) {
    require_finite(linear, "noise power (linear)", "core-model");
    if (linear <= 0.0)
        throw domain_error("core-model", "linear noise power must be positive, got " +
                                             std::to_string(linear));
    return 10.0 * std::log10(linear);
}

// Tagged noise power; keeps dB and linear representations from mixing silently.
class NoisePower {
public:
    static NoisePower from_db(double db) { return NoisePower(db_to_linear(db)); }
    static NoisePower from_linear(double linear) {
        require_finite(linear, "noise power (linear)", "core-model");
        if (linear <= 0.0)
            throw domain_error("core-model", "linear noise power must be positive");
        return NoisePower(linear);
    }

    double linear() const { return linear_; }
    double db() const { return linear_to_db(linear_); }

private:
    explicit NoisePower(double linear) : linear_(linear) {}
    double linear_;
};

struct SqlParams {
    double tau_s = 1.0;   // measurement time
    double mass_kg = 1.0; // mirror mass
};

// Standard quantum limit displacement sqrt(hbar * tau / m).
inline double sql_displacement(const SqlParams& p) {
    if (!(p.tau_s > 0.0))
        throw argument_error("core-model", "sql tau must be positive");
    if (!(p.mass_kg > 0.0))
        throw argument_error("core-model", "sql mass must be positive");
    return std::sqrt(constants::hbar * p.tau_s / p.mass_kg);
}

} // namespace sqzrot
