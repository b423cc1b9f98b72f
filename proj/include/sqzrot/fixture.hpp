#pragma once

#include <cmath>
#include <vector>

#include "sqzrot/grid.hpp"
#include "sqzrot/trace.hpp"

namespace sqzrot::fixture {

// Synthetic zero-analysis-frequency noise model behind the shipped data
// files. It is NOT measured data; it reproduces the qualitative features of
// the experiment: a squeezing dip of about -4.5 dB near delta = -2 MHz, an
// excess-noise peak near +18 MHz, a mildly squeezed plateau across the gain
// band, and smooth tails returning to the shot-noise limit. Parameters were
// tuned once so the full pipeline meets the documented acceptance windows
// (SNLF + delta within [4.8, 5.7] MHz, roundtrip residual < 1%, locked-trace
// gap growing with analysis frequency).

inline double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

inline double gaussian(double x, double center, double sigma) {
    double u = (x - center) / sigma;
    return std::exp(-0.5 * u * u);
}

// Squeezed-band window: soft edges at +0.5 and -48 MHz.
inline double band(double d) { return logistic((0.5 - d) / 1.0) * logistic((d + 48.0) / 1.2); }

// Excess-noise bump around +18 MHz, gated off below ~+6 MHz.
inline double noise_bump(double d) {
    return 7.0 * logistic((d - 5.8) / 0.7) * gaussian(d, 18.0, 6.0);
}

// Minimum-phase channel at zero analysis frequency (linear units).
inline double g_min(double d) {
    return 1.0 - 0.15 * band(d) - 0.60 * gaussian(d, -2.0, 1.8) + noise_bump(d);
}

// Maximum-phase channel: anti-squeezing mirror of the dip plus a stronger
// copy of the noise bump.
inline double g_max(double d) {
    return g_min(d) + 0.02 + 0.30 * band(d) + 2.6 * gaussian(d, -2.0, 2.6) + 0.9 * noise_bump(d);
}

// Single-sided variant: flat squeezing for delta below ~+1.5 MHz, so spectra
// at delta <= 0 are translates of the delta = 0 spectrum.
inline double g_single_sided_min(double d) {
    return 1.0 - 0.22 * logistic((1.5 - d) / 0.4) + noise_bump(d);
}

inline double g_single_sided_max(double d) {
    return g_single_sided_min(d) + 0.02 + 0.45 * logistic((1.5 - d) / 0.4) + 0.9 * noise_bump(d);
}

inline UniformGrid default_grid() { return UniformGrid{-60.0, 0.25, 441}; }

// Trace as the spectrum analyzer would record it at analysis frequency a:
// the linear two-sideband mean of each channel.
template <typename FMin, typename FMax>
NoiseTrace make_trace(const UniformGrid& grid, FMin gmin, FMax gmax, double analysis_frequency) {
    NoiseTrace t;
    t.grid = grid;
    t.analysis_frequency_mhz = analysis_frequency;
    t.n_min.resize(grid.size());
    t.n_max.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double d = grid[i];
        t.n_min[i] = 0.5 * (gmin(d + analysis_frequency) + gmin(d - analysis_frequency));
        t.n_max[i] = 0.5 * (gmax(d + analysis_frequency) + gmax(d - analysis_frequency));
    }
    return t;
}

inline NoiseTrace fig2_like_trace(double analysis_frequency = 1.0) {
    return make_trace(default_grid(), [](double d) { return g_min(d); },
                      [](double d) { return g_max(d); }, analysis_frequency);
}

inline NoiseTrace single_sided_trace(double analysis_frequency = 1.0) {
    return make_trace(default_grid(), [](double d) { return g_single_sided_min(d); },
                      [](double d) { return g_single_sided_max(d); }, analysis_frequency);
}

} // namespace sqzrot::fixture
