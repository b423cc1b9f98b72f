#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sqzrot/errors.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/units.hpp"

namespace sqzrot {

using cplx = std::complex<double>;

// Parameters of the propagation medium. The first four set the operating
// point; the last four parameterize the phenomenological complex Lorentzian
// backend standing in for the microscopic double-Lambda result.
struct MediumParams {
    double one_photon_detuning_ghz = 0.8;
    double pump_power_mw = 200.0;
    double optical_depth = 1000.0;
    double cell_length_m = constants::default_cell_length_m;
    // Fitted defaults (see tools/fit_ab_defaults): reproduce the ~0.3pi peak
    // phase shift near 10 MHz with negligible tails outside [0, 20] MHz.
    double raman_center_mhz = 10.25;
    double raman_width_mhz = 0.4;
    double gain_strength = 0.06;
    double lightshift_scale = -2.0;

    void validate() const {
        if (!(cell_length_m > 0.0))
            throw argument_error("heisenberg-langevin", "cell length must be positive");
        if (!(raman_width_mhz > 0.0))
            throw argument_error("heisenberg-langevin", "raman width must be positive");
        if (!(optical_depth > 0.0))
            throw argument_error("heisenberg-langevin", "optical depth must be positive");
        if (!(one_photon_detuning_ghz > 0.0))
            throw argument_error("heisenberg-langevin", "one-photon detuning must be positive");
        if (!(pump_power_mw > 0.0))
            throw argument_error("heisenberg-langevin", "pump power must be positive");
    }
};

struct ABCoefficients {
    cplx A; // per meter
    cplx B; // per meter
};

// Complex-Lorentzian gain line centered at the Raman resonance:
//   B = (g0 d / L) * gamma / (gamma - i x),        x = delta - delta_R
//   Im A = (S d / L) * x gamma / (gamma^2 + x^2)   (light-shift dispersion)
//   Re A = -|B| * absorption_ratio
// with gamma = Gamma_2 / 2 and d a dimensionless drive factor tying the gain
// magnitude to pump power, one-photon detuning, and optical depth (equal to 1
// at the 0.8 GHz / 200 mW / OD 1000 operating point).
inline ABCoefficients ab_phenomenological(const MediumParams& p, double delta_mhz) {
    p.validate();
    require_finite(delta_mhz, "two-photon detuning", "heisenberg-langevin");
    constexpr double absorption_ratio = 0.05;
    double gamma = 0.5 * p.raman_width_mhz;
    double x = delta_mhz - p.raman_center_mhz;
    double drive = (p.pump_power_mw / 200.0) * (0.8 / p.one_photon_detuning_ghz) *
                   (0.8 / p.one_photon_detuning_ghz) * (p.optical_depth / 1000.0);
    cplx b = (p.gain_strength * drive / p.cell_length_m) * gamma / cplx(gamma, -x);
    double im_a = (p.lightshift_scale * drive / p.cell_length_m) * x * gamma /
                  (gamma * gamma + x * x);
    return ABCoefficients{cplx(-std::abs(b) * absorption_ratio, im_a), b};
}

// Tabulated A(delta), B(delta), linearly interpolated between grid points.
struct CoefficientProfile {
    UniformGrid grid;
    std::vector<cplx> A;
    std::vector<cplx> B;

    ABCoefficients at(double delta_mhz) const {
        std::vector<double> re(grid.size());
        auto interp_c = [&](const std::vector<cplx>& v) {
            for (std::size_t i = 0; i < grid.size(); ++i) re[i] = v[i].real();
            double r = interpolate(grid, re, delta_mhz, "heisenberg-langevin", "detuning");
            for (std::size_t i = 0; i < grid.size(); ++i) re[i] = v[i].imag();
            double im = interpolate(grid, re, delta_mhz, "heisenberg-langevin", "detuning");
            return cplx(r, im);
        };
        return ABCoefficients{interp_c(A), interp_c(B)};
    }
};

// Exact solution of d/dz [alpha; alpha*] = [[A, B], [B*, A*]] [alpha; alpha*]
// over a homogeneous stretch of length L. With A = p + iq the matrix is
// p I + K, K = [[iq, B], [B*, -iq]], and K^2 = (|B|^2 - q^2) I, so
//   exp(M L) = e^{pL} [ cosh(mu L) I + sinh(mu L)/mu K ],  mu^2 = |B|^2 - q^2.
inline cplx propagate(cplx A, cplx B, cplx alpha0, double length_m) {
    if (!(length_m >= 0.0))
        throw argument_error("heisenberg-langevin", "propagation length must be >= 0");
    if (!std::isfinite(A.real()) || !std::isfinite(A.imag()) || !std::isfinite(B.real()) ||
        !std::isfinite(B.imag()))
        throw argument_error("heisenberg-langevin", "non-finite propagation coefficients");
    double p = A.real();
    double q = A.imag();
    cplx mu = std::sqrt(cplx(std::norm(B) - q * q, 0.0));
    cplx muL = mu * length_m;
    cplx ch, shm; // cosh(mu L), sinh(mu L)/mu
    if (std::abs(muL) < 1e-4) {
        cplx m2 = muL * muL;
        ch = 1.0 + m2 * (0.5 + m2 / 24.0);
        shm = length_m * (1.0 + m2 * (1.0 / 6.0 + m2 / 120.0));
    } else {
        ch = std::cosh(muL);
        shm = std::sinh(muL) / mu;
    }
    cplx alpha = ch * alpha0 + shm * (cplx(0.0, q) * alpha0 + B * std::conj(alpha0));
    return std::exp(p * length_m) * alpha;
}

// Fixed-step classical 4th-order integration of the phase equation
//   dphi/dz = Im A + Im B cos(2 phi) - Re B sin(2 phi),
// which is exactly the phase of the propagate() solution.
inline double phase_evolution(cplx A, cplx B, double phi0, double length_m, int steps = 1000) {
    if (steps < 1)
        throw argument_error("heisenberg-langevin", "steps must be >= 1");
    if (!(length_m >= 0.0))
        throw argument_error("heisenberg-langevin", "propagation length must be >= 0");
    double im_a = A.imag(), im_b = B.imag(), re_b = B.real();
    auto rate = [&](double phi) {
        return im_a + im_b * std::cos(2.0 * phi) - re_b * std::sin(2.0 * phi);
    };
    double h = length_m / steps;
    double phi = phi0;
    for (int i = 0; i < steps; ++i) {
        double k1 = rate(phi);
        double k2 = rate(phi + 0.5 * h * k1);
        double k3 = rate(phi + 0.5 * h * k2);
        double k4 = rate(phi + h * k3);
        phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(phi))
            throw numerical_error("heisenberg-langevin",
                                  "phase integration diverged at z = " +
                                      std::to_string((i + 1) * h) + " m");
    }
    return phi;
}

// Accumulated phase phi_alpha(delta) across the cell, unwrapped along the
// sweep by nearest-branch continuation.
struct PhaseSweep {
    std::vector<double> delta_mhz;
    std::vector<double> phase_rad;
};

inline PhaseSweep phase_shift_sweep(const std::function<ABCoefficients(double)>& coefficients,
                                    double phi0, double length_m,
                                    const std::vector<double>& delta_grid, int steps = 1000) {
    PhaseSweep s;
    s.delta_mhz = delta_grid;
    s.phase_rad.reserve(delta_grid.size());
    for (double d : delta_grid) {
        auto ab = coefficients(d);
        double phi = phase_evolution(ab.A, ab.B, phi0, length_m, steps);
        if (!s.phase_rad.empty()) {
            double prev = s.phase_rad.back();
            phi += 2.0 * constants::pi * std::round((prev - phi) / (2.0 * constants::pi));
        }
        s.phase_rad.push_back(phi);
    }
    return s;
}

inline PhaseSweep phase_shift_sweep(const MediumParams& p, double phi0,
                                    const std::vector<double>& delta_grid, int steps = 1000) {
    return phase_shift_sweep([&](double d) { return ab_phenomenological(p, d); }, phi0,
                             p.cell_length_m, delta_grid, steps);
}

inline PhaseSweep phase_shift_sweep(const CoefficientProfile& profile, double phi0,
                                    double length_m, const std::vector<double>& delta_grid,
                                    int steps = 1000) {
    return phase_shift_sweep([&](double d) { return profile.at(d); }, phi0, length_m, delta_grid,
                             steps);
}

// Inter-sideband phase shift fed to the phase model:
// dphi(delta, omega_a) = phi_alpha(delta + omega_a) - phi_alpha(delta - omega_a).
inline double dphi_for_phase_model(const PhaseSweep& sweep, double delta, double omega_a) {
    auto grid = UniformGrid::from_samples(sweep.delta_mhz, "heisenberg-langevin");
    double up = interpolate(grid, sweep.phase_rad, delta + omega_a, "heisenberg-langevin",
                            "upper sideband");
    double lo = interpolate(grid, sweep.phase_rad, delta - omega_a, "heisenberg-langevin",
                            "lower sideband");
    return up - lo;
}

} // namespace sqzrot
