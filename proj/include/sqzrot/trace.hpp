#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"
#include "sqzrot/grid.hpp"

namespace sqzrot {

// Phase-extremal noise versus two-photon detuning at one analysis frequency.
// Channels are stored in linear units (SNL = 1).
struct NoiseTrace {
    UniformGrid grid;                 // detuning axis, MHz
    std::vector<double> n_min;        // phase minimizing the noise
    std::vector<double> n_max;        // phase maximizing the noise
    double analysis_frequency_mhz = 1.0;

    void validate(const char* module) const {
        if (n_min.size() != grid.size() || n_max.size() != grid.size())
            throw argument_error(module, "trace channel lengths do not match the grid");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!(n_min[i] > 0.0) || !(n_max[i] > 0.0))
                throw data_error(module, "non-positive linear noise power at row " +
                                             std::to_string(i + 1));
            if (n_min[i] > n_max[i])
                throw data_error(module, "min channel exceeds max channel at row " +
                                             std::to_string(i + 1));
        }
    }
};

// (N+, N-) per detuning: N(phi) = N+ + N- cos(phi).
struct PhaseResolvedNoise {
    UniformGrid grid;
    std::vector<double> n_plus;
    std::vector<double> n_minus;
};

inline PhaseResolvedNoise build_phase_resolved(const NoiseTrace& trace) {
    trace.validate("phase-model");
    PhaseResolvedNoise p;
    p.grid = trace.grid;
    p.n_plus.resize(trace.grid.size());
    p.n_minus.resize(trace.grid.size());
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        p.n_plus[i] = 0.5 * (trace.n_max[i] + trace.n_min[i]);
        p.n_minus[i] = 0.5 * (trace.n_max[i] - trace.n_min[i]);
    }
    return p;
}

} // namespace sqzrot
