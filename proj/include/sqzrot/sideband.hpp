#pragma once

#include <vector>

#include "sqzrot/errors.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

// Noise versus analysis frequency at fixed two-photon detuning, in dB.
struct SqueezingSpectrum {
    std::vector<double> omega_mhz;
    std::vector<double> noise_db;
    double delta_mhz = 0.0;
};

// Two-sideband synthesis N(w_a, d) = [N(0, d+w_a) + N(0, d-w_a)] / 2.
// g is the zero-analysis-frequency curve in linear units; the mean is taken in
// linear power so the shot-noise fixed point g == 1 -> N == 1 is preserved.
inline double sideband_sum(const UniformGrid& grid, const std::vector<double>& g, double omega_a,
                           double delta) {
    require_finite(omega_a, "analysis frequency", "core-model");
    require_finite(delta, "two-photon detuning", "core-model");
    double upper = interpolate(grid, g, delta + omega_a, "core-model", "upper sideband");
    double lower = interpolate(grid, g, delta - omega_a, "core-model", "lower sideband");
    return 0.5 * (upper + lower);
}

inline SqueezingSpectrum synthesize_spectrum(const UniformGrid& grid, const std::vector<double>& g,
                                             double delta, const std::vector<double>& omega_grid) {
    SqueezingSpectrum s;
    s.delta_mhz = delta;
    s.omega_mhz = omega_grid;
    s.noise_db.reserve(omega_grid.size());
    for (double w : omega_grid)
        s.noise_db.push_back(linear_to_db(sideband_sum(grid, g, w, delta)));
    return s;
}

} // namespace sqzrot
