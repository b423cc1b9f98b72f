#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"

namespace sqzrot {

// Uniformly spaced sample axis (detunings or analysis frequencies, MHz).
struct UniformGrid {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double operator[](std::size_t i) const { return start + step * static_cast<double>(i); }
    double back() const { return (*this)[count - 1]; }
    std::size_t size() const { return count; }

    bool contains(double x) const {
        return count > 0 && x >= start - 1e-12 * std::abs(step) &&
               x <= back() + 1e-12 * std::abs(step);
    }

    std::vector<double> values() const {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i) v[i] = (*this)[i];
        return v;
    }

    // Validates strict increase and uniform spacing to 1 part in 1e9.
    static UniformGrid from_samples(const std::vector<double>& x, const char* module) {
        if (x.size() < 2)
            throw argument_error(module, "grid needs at least two points");
        double step = x[1] - x[0];
        if (!(step > 0.0))
            throw data_error(module, "grid is not strictly increasing at index 1");
        for (std::size_t i = 1; i < x.size(); ++i) {
            double d = x[i] - x[i - 1];
            if (!(d > 0.0))
                throw data_error(module,
                                 "grid is not strictly increasing at index " + std::to_string(i));
            if (std::abs(d - step) > 1e-9 * std::abs(step))
                throw data_error(module, "grid spacing is not uniform at index " +
                                             std::to_string(i) + " (expected " +
                                             std::to_string(step) + ", got " + std::to_string(d) +
                                             ")");
        }
        return UniformGrid{x[0], step, x.size()};
    }
};

// Linear interpolation of sampled values at x; range error outside support.
inline double interpolate(const UniformGrid& grid, const std::vector<double>& values, double x,
                          const char* module, const char* what) {
    if (values.size() != grid.size())
        throw argument_error(module, "value array does not match grid length");
    if (!grid.contains(x))
        throw range_error(module, std::string(what) + " at " + std::to_string(x) +
                                      " MHz lies outside the grid support [" +
                                      std::to_string(grid.start) + ", " +
                                      std::to_string(grid.back()) + "]");
    double u = (x - grid.start) / grid.step;
    if (u <= 0.0) return values.front();
    auto i = static_cast<std::size_t>(u);
    if (i >= grid.size() - 1) return values.back();
    double frac = u - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

// Exact node lookup (no interpolation); range error for off-grid points.
inline std::size_t exact_index(const UniformGrid& grid, double x, const char* module,
                               const char* what) {
    double u = (x - grid.start) / grid.step;
    auto j = static_cast<long long>(std::llround(u));
    if (j < 0 || static_cast<std::size_t>(j) >= grid.size() || std::abs(u - static_cast<double>(j)) > 1e-6)
        throw range_error(module, std::string(what) + " at " + std::to_string(x) +
                                      " MHz is not a grid point of the sampled data");
    return static_cast<std::size_t>(j);
}

} // namespace sqzrot
