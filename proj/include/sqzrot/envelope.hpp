#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

// Centered sliding-window minimum (monotonic-deque, O(n)). Window is clamped
// at the edges so the output length matches the input.
inline std::vector<double> sliding_minimum(const std::vector<double>& x, std::size_t window) {
    if (window < 1)
        throw argument_error("core-model", "sliding window must have at least one point");
    if (window > x.size())
        throw argument_error("core-model", "sliding window longer than the trace");
    std::size_t n = x.size();
    std::size_t half = window / 2;
    std::vector<double> out(n);
    std::deque<std::size_t> q; // indices of increasing values
    std::size_t added = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t hi = std::min(n - 1, i + half);
        while (added <= hi) {
            while (!q.empty() && x[q.back()] >= x[added]) q.pop_back();
            q.push_back(added);
            ++added;
        }
        std::size_t lo = i >= half ? i - half : 0;
        while (q.front() < lo) q.pop_front();
        out[i] = x[q.front()];
    }
    return out;
}

namespace detail {

// Second-order Butterworth low-pass biquad via the bilinear transform.
struct Biquad {
    double b0, b1, b2, a1, a2;
};

inline Biquad butterworth_lowpass(double cutoff_hz_per_sample) {
    double k = std::tan(constants::pi * cutoff_hz_per_sample);
    double norm = 1.0 + std::sqrt(2.0) * k + k * k;
    return Biquad{k * k / norm, 2.0 * k * k / norm, k * k / norm,
                  2.0 * (k * k - 1.0) / norm, (1.0 - std::sqrt(2.0) * k + k * k) / norm};
}

inline std::vector<double> filter_forward(const Biquad& f, const std::vector<double>& x) {
    std::vector<double> y(x.size());
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
    if (!x.empty()) {
        // Start the filter at steady state for the first sample to tame the
        // leading transient.
        x1 = x2 = x[0];
        double dc = (f.b0 + f.b1 + f.b2) / (1.0 + f.a1 + f.a2);
        y1 = y2 = x[0] * dc;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        double yi = f.b0 * x[i] + f.b1 * x1 + f.b2 * x2 - f.a1 * y1 - f.a2 * y2;
        x2 = x1;
        x1 = x[i];
        y2 = y1;
        y1 = yi;
        y[i] = yi;
    }
    return y;
}

// Zero-phase filtering: odd-reflection pad, forward pass, reverse pass, crop.
inline std::vector<double> filtfilt(const Biquad& f, const std::vector<double>& x) {
    std::size_t n = x.size();
    std::size_t pad = std::min(n - 1, static_cast<std::size_t>(9));
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x.back() - x[n - 1 - i]);
    auto fwd = filter_forward(f, ext);
    std::reverse(fwd.begin(), fwd.end());
    auto bwd = filter_forward(f, fwd);
    std::reverse(bwd.begin(), bwd.end());
    return std::vector<double>(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                               bwd.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

} // namespace detail

// Envelope of the detected noise minima: sliding-window minimum over roughly
// one LO-scan oscillation period, then a zero-phase second-order low-pass.
// Input and output are in dB on a uniform frequency grid.
inline std::vector<double> lower_envelope(const UniformGrid& grid, const std::vector<double>& trace_db,
                                          double cutoff_mhz = 0.2, std::size_t window = 0) {
    if (trace_db.size() != grid.size())
        throw argument_error("core-model", "trace length does not match the grid");
    if (trace_db.size() < 2)
        throw argument_error("core-model", "envelope needs at least two samples");
    double nyquist = 0.5 / grid.step;
    if (!(cutoff_mhz > 0.0) || cutoff_mhz >= nyquist)
        throw argument_error("core-model", "cutoff must lie in (0, Nyquist = " +
                                               std::to_string(nyquist) + " MHz)");
    if (window == 0)
        window = std::max<std::size_t>(3, trace_db.size() / 25) | 1u;
    auto mins = sliding_minimum(trace_db, window);
    return detail::filtfilt(detail::butterworth_lowpass(cutoff_mhz * grid.step), mins);
}

// Shot-noise-limit frequency: first upward 0 dB crossing of the envelope.
struct SnlfResult {
    std::optional<double> frequency_mhz; // empty when the envelope never dips below 0 dB
    bool ever_below_snl = false;
};

inline SnlfResult snlf(const std::vector<double>& omega_mhz, const std::vector<double>& envelope_db) {
    if (omega_mhz.empty() || envelope_db.size() != omega_mhz.size())
        throw argument_error("core-model", "snlf needs matching non-empty grids");
    std::size_t first_below = envelope_db.size();
    for (std::size_t i = 0; i < envelope_db.size(); ++i) {
        if (envelope_db[i] < 0.0) {
            first_below = i;
            break;
        }
    }
    if (first_below == envelope_db.size()) return SnlfResult{std::nullopt, false};
    for (std::size_t i = first_below + 1; i < envelope_db.size(); ++i) {
        if (envelope_db[i] >= 0.0) {
            double x0 = omega_mhz[i - 1], x1 = omega_mhz[i];
            double y0 = envelope_db[i - 1], y1 = envelope_db[i];
            return SnlfResult{x0 + (0.0 - y0) * (x1 - x0) / (y1 - y0), true};
        }
    }
    return SnlfResult{std::nullopt, true}; // squeezed through the end of the grid
}

} // namespace sqzrot
