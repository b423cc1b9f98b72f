#pragma once

#include <cmath>
#include <complex>

#include "sqzrot/errors.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/trace.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

// N(phi) for a single sideband: N+ + N- cos(phi). phi = 0 gives the
// noise-maximizing phase, phi = pi the minimizing one.
inline double noise_at_phase(double n_plus, double n_minus, double phi) {
    return n_plus + n_minus * std::cos(phi);
}

inline double noise_at_phase(const PhaseResolvedNoise& p, double detuning, double phi) {
    std::size_t i = exact_index(p.grid, detuning, "phase-model", "detuning");
    return noise_at_phase(p.n_plus[i], p.n_minus[i], phi);
}

// (N+, N-) of the two sidebands entering the noise at (omega_a, delta).
struct SidebandPair {
    double n_plus_lower, n_minus_lower;
    double n_plus_upper, n_minus_upper;
};

inline SidebandPair sidebands_at(const PhaseResolvedNoise& p, double omega_a, double delta) {
    std::size_t lo = exact_index(p.grid, delta - omega_a, "phase-model", "lower sideband");
    std::size_t hi = exact_index(p.grid, delta + omega_a, "phase-model", "upper sideband");
    return SidebandPair{p.n_plus[lo], p.n_minus[lo], p.n_plus[hi], p.n_minus[hi]};
}

// [N_lower(phi) + N_upper(phi + dphi)] / 2; dphi is the inter-sideband shift.
inline double two_sideband_noise(const SidebandPair& s, double phi, double dphi) {
    return 0.5 * (noise_at_phase(s.n_plus_lower, s.n_minus_lower, phi) +
                  noise_at_phase(s.n_plus_upper, s.n_minus_upper, phi + dphi));
}

inline double two_sideband_noise(const PhaseResolvedNoise& p, double omega_a, double delta,
                                 double phi, double dphi) {
    return two_sideband_noise(sidebands_at(p, omega_a, delta), phi, dphi);
}

// Closed-form minimum over the LO phase. The phi-dependent part of the
// two-sideband noise is Re[(N-L + N-U e^{i dphi}) e^{i phi}] / 2, a single
// sinusoid of amplitude |R| / 2, so
//   n_min = (N+L + N+U)/2 - |R|/2   at   phi* = pi - arg R.
struct NMinResult {
    double value;
    double phi_star;
    bool degenerate; // |R| ~ 0: noise is phase-independent, phi* = pi by convention
};

namespace detail {

inline std::complex<double> sideband_rotor(const SidebandPair& s, double dphi) {
    return std::complex<double>(s.n_minus_lower, 0.0) +
           s.n_minus_upper * std::exp(std::complex<double>(0.0, dphi));
}

} // namespace detail

inline NMinResult n_min(const SidebandPair& s, double dphi) {
    auto r = detail::sideband_rotor(s, dphi);
    double mean = 0.5 * (s.n_plus_lower + s.n_plus_upper);
    double amp = std::abs(r);
    if (amp < 1e-12) return NMinResult{mean, constants::pi, true};
    return NMinResult{mean - 0.5 * amp, constants::pi - std::arg(r), false};
}

inline NMinResult n_min(const PhaseResolvedNoise& p, double omega_a, double delta, double dphi) {
    return n_min(sidebands_at(p, omega_a, delta), dphi);
}

// Noise with the LO phase frozen at phi1 instead of tracking the minimum.
inline double n_locked(const SidebandPair& s, double dphi, double phi1) {
    return two_sideband_noise(s, phi1, dphi);
}

inline double n_locked(const PhaseResolvedNoise& p, double omega_a, double delta, double dphi,
                       double phi1) {
    return n_locked(sidebands_at(p, omega_a, delta), dphi, phi1);
}

// The lock servo's fixed point: the phase minimizing the noise at lock_omega.
struct LockResult {
    double phi1;
    bool degenerate;
};

inline LockResult lock_phase(const PhaseResolvedNoise& p, double delta, double dphi,
                             double lock_omega = 1.0) {
    auto m = n_min(p, lock_omega, delta, dphi);
    return LockResult{m.phi_star, m.degenerate};
}

} // namespace sqzrot
