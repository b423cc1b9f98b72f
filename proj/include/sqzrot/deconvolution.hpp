#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"
#include "sqzrot/fft.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

enum class Taper { raised_cosine, none };

struct DeconvolutionConfig {
    double shift_a = 1.0;   // analysis frequency of the measured trace, MHz
    double eps = 1e-3;      // Tikhonov regularization of the kernel zeros
    Taper taper = Taper::raised_cosine;
    int pad_factor = 4;

    void validate() const {
        if (!(shift_a > 0.0))
            throw argument_error("deconvolution", "shift_a must be positive");
        if (!(eps >= 0.0))
            throw argument_error("deconvolution", "regularization eps must be >= 0");
        if (pad_factor < 1 || pad_factor > 16)
            throw argument_error("deconvolution", "pad_factor must lie in [1, 16]");
    }
};

namespace detail {

inline double lanczos(double x, int a) {
    if (x == 0.0) return 1.0;
    if (std::abs(x) >= a) return 0.0;
    double px = constants::pi * x;
    return a * std::sin(px) * std::sin(px / a) / (px * px);
}

struct AlignedInput {
    UniformGrid grid;
    std::vector<double> values;
    std::size_t shift_points; // shift_a expressed in grid steps
};

// Band-limited (Lanczos-8 windowed sinc) resampling onto a finer uniform grid.
inline std::vector<double> resample_uniform(const UniformGrid& grid, const std::vector<double>& v,
                                            const UniformGrid& target) {
    constexpr int a = 8;
    std::vector<double> out(target.size());
    auto n = static_cast<long long>(grid.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        double s = (target[i] - grid.start) / grid.step;
        auto j0 = static_cast<long long>(std::floor(s));
        double acc = 0.0, wsum = 0.0;
        for (long long j = j0 - a + 1; j <= j0 + a; ++j) {
            double w = lanczos(s - static_cast<double>(j), a);
            long long jc = j < 0 ? 0 : (j >= n ? n - 1 : j);
            acc += w * v[static_cast<std::size_t>(jc)];
            wsum += w;
        }
        out[i] = acc / wsum;
    }
    return out;
}

// The shift must be an integer number of grid steps; when it is not (to 1e-9
// relative), the input is resampled onto a finer grid whose spacing divides a.
inline AlignedInput align_to_shift(const UniformGrid& grid, const std::vector<double>& v, double a) {
    if (v.size() != grid.size())
        throw argument_error("deconvolution", "value array does not match grid length");
    double ratio = a / grid.step;
    double rounded = std::round(ratio);
    if (rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio))
        return AlignedInput{grid, v, static_cast<std::size_t>(rounded)};
    auto m = static_cast<std::size_t>(std::ceil(ratio - 1e-12));
    if (m < 1 || a > (grid.back() - grid.start))
        throw argument_error("deconvolution", "shift " + std::to_string(a) +
                                                  " MHz is not representable on the grid");
    double step = a / static_cast<double>(m);
    auto count = static_cast<std::size_t>(std::floor((grid.back() - grid.start) / step + 1e-9)) + 1;
    UniformGrid target{grid.start, step, count};
    return AlignedInput{target, resample_uniform(grid, v, target), m};
}

} // namespace detail

// f(d) = g(d + a) + g(d - a), evaluated on the interior where both shifts
// stay on the grid. Note there is no factor 1/2 here; the two-sideband mean
// carries it instead.
struct ForwardResult {
    UniformGrid grid;
    std::vector<double> f;
};

inline ForwardResult forward_model(const UniformGrid& grid, const std::vector<double>& g, double a) {
    if (!(a > 0.0))
        throw argument_error("deconvolution", "shift a must be positive");
    auto in = detail::align_to_shift(grid, g, a);
    std::size_t k = in.shift_points;
    if (in.grid.size() < 2 * k + 1)
        throw argument_error("deconvolution", "grid too short for shift of " +
                                                  std::to_string(k) + " steps");
    ForwardResult r;
    r.grid = UniformGrid{in.grid[k], in.grid.step, in.grid.size() - 2 * k};
    r.f.resize(r.grid.size());
    for (std::size_t i = 0; i < r.grid.size(); ++i) r.f[i] = in.values[i + 2 * k] + in.values[i];
    return r;
}

// Zero-analysis-frequency curve recovered from a trace measured at w_a = a.
// Transform-domain kernel: cos(2 pi a t) / (2 (cos^2(2 pi a t) + eps)); at
// eps = 0 the bins within 1e-12 of a kernel zero are dropped instead of
// divided. An affine baseline through the edge samples is removed first and
// its half is restored afterwards (the forward model maps affine w to 2w), so
// the tapering acts on the deviation from the edges, not on the trace itself.
struct DeconvolutionResult {
    UniformGrid grid;
    std::vector<double> g;
    double imag_ratio = 0.0; // || Im ||_2 / || f ||_2 diagnostic
};

inline DeconvolutionResult deconvolve(const UniformGrid& grid, const std::vector<double>& f,
                                      const DeconvolutionConfig& cfg) {
    cfg.validate();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i]))
            throw argument_error("deconvolution",
                                 "non-finite input sample at index " + std::to_string(i));
    auto in = detail::align_to_shift(grid, f, cfg.shift_a);
    std::size_t n = in.grid.size();
    if (n < 4)
        throw argument_error("deconvolution", "input too short to deconvolve");
    std::size_t padded = next_pow2(n * static_cast<std::size_t>(cfg.pad_factor));
    double span_t = static_cast<double>(padded) * in.grid.step;
    if (span_t < 8.0 * cfg.shift_a)
        throw argument_error("deconvolution",
                             "grid too short to resolve the kernel period 1/(2a)");

    std::vector<double> base(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n - 1);
        base[i] = in.values.front() * (1.0 - t) + in.values.back() * t;
        r[i] = in.values[i] - base[i];
    }
    if (cfg.taper == Taper::raised_cosine) {
        auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.10 * n)));
        for (std::size_t k = 0; k < m && k < n; ++k) {
            double w = 0.5 * (1.0 - std::cos(constants::pi * static_cast<double>(k + 1) /
                                             static_cast<double>(m + 1)));
            r[k] *= w;
            r[n - 1 - k] *= w;
        }
    }

    std::vector<std::complex<double>> buf(padded, 0.0);
    for (std::size_t i = 0; i < n; ++i) buf[i] = r[i];
    fft_inplace(buf, false);
    for (std::size_t j = 0; j < padded; ++j) {
        double cycles = j <= padded / 2 ? static_cast<double>(j)
                                        : static_cast<double>(j) - static_cast<double>(padded);
        double t = cycles / span_t;
        double c = std::cos(2.0 * constants::pi * cfg.shift_a * t);
        double kernel;
        if (cfg.eps == 0.0)
            kernel = std::abs(c) < 1e-12 ? 0.0 : 1.0 / (2.0 * c);
        else
            kernel = c / (2.0 * (c * c + cfg.eps));
        buf[j] *= kernel;
    }
    fft_inplace(buf, true);

    DeconvolutionResult out;
    out.grid = in.grid;
    out.g.resize(n);
    double imag2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.g[i] = buf[i].real() + 0.5 * base[i];
        imag2 += buf[i].imag() * buf[i].imag();
        norm2 += in.values[i] * in.values[i];
    }
    out.imag_ratio = norm2 > 0.0 ? std::sqrt(imag2 / norm2) : 0.0;
    return out;
}

// || forward_model(deconvolve(f)) - f ||_2 / || f ||_2 on the common support.
inline double roundtrip_residual(const UniformGrid& grid, const std::vector<double>& f,
                                 const DeconvolutionConfig& cfg) {
    auto dec = deconvolve(grid, f, cfg);
    auto fwd = forward_model(dec.grid, dec.g, cfg.shift_a);
    auto in = detail::align_to_shift(grid, f, cfg.shift_a);
    std::size_t k = in.shift_points;
    double err2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < fwd.grid.size(); ++i) {
        double d = fwd.f[i] - in.values[i + k];
        err2 += d * d;
        norm2 += in.values[i + k] * in.values[i + k];
    }
    if (norm2 == 0.0)
        throw argument_error("deconvolution", "zero-norm input in roundtrip_residual");
    return std::sqrt(err2 / norm2);
}

} // namespace sqzrot
