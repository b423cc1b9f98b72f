#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sqzrot/csv.hpp"
#include "sqzrot/deconvolution.hpp"
#include "sqzrot/envelope.hpp"
#include "sqzrot/errors.hpp"
#include "sqzrot/langevin.hpp"
#include "sqzrot/phase_model.hpp"
#include "sqzrot/runconfig.hpp"
#include "sqzrot/sideband.hpp"
#include "sqzrot/svg.hpp"
#include "sqzrot/trace.hpp"

namespace sqzrot {

namespace detail {

// Collects files written by one subcommand; anything already on disk is
// removed again if the command fails before finishing.
class OutputSession {
public:
    explicit OutputSession(const std::string& dir) : dir_(dir) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec)
            throw data_error("cli-io", "cannot create output directory " + dir_ + ": " +
                                           ec.message());
    }

    ~OutputSession() {
        if (committed_) return;
        for (const auto& p : written_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
    }

    std::string path(const std::string& name) const {
        return (std::filesystem::path(dir_) / name).string();
    }

    void write(const std::string& name, const std::string& content) {
        std::string p = path(name);
        atomic_write_text(p, content, "cli-io");
        written_.push_back(p);
    }

    std::vector<std::string> commit() {
        committed_ = true;
        return written_;
    }

private:
    std::string dir_;
    std::vector<std::string> written_;
    bool committed_ = false;
};

inline NoiseTrace require_trace(const RunConfig& cfg) {
    if (!cfg.trace_path)
        throw argument_error("cli-io", "this subcommand needs [inputs] trace in the config");
    return load_noise_trace(*cfg.trace_path, cfg.deconv.shift_a);
}

// The stored trace is the two-sideband MEAN; the shift-and-add model works on
// the SUM, so each channel is doubled before deconvolution and the recovered
// curve is the zero-frequency noise on the same SNL = 1 normalization.
inline NoiseTrace deconvolve_trace(const NoiseTrace& trace, const DeconvolutionConfig& cfg) {
    std::vector<double> fmin(trace.grid.size()), fmax(trace.grid.size());
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        fmin[i] = 2.0 * trace.n_min[i];
        fmax[i] = 2.0 * trace.n_max[i];
    }
    auto dmin = deconvolve(trace.grid, fmin, cfg);
    auto dmax = deconvolve(trace.grid, fmax, cfg);
    NoiseTrace zero;
    zero.grid = dmin.grid;
    zero.analysis_frequency_mhz = 0.0;
    zero.n_min = dmin.g;
    zero.n_max = dmax.g;
    zero.validate("deconvolution");
    return zero;
}

inline std::vector<double> to_db(const std::vector<double>& linear) {
    std::vector<double> out;
    out.reserve(linear.size());
    for (double v : linear) out.push_back(linear_to_db(v));
    return out;
}

// Inter-sideband phase shift at a given analysis frequency under the
// configured mode: a single scalar, or the difference of Langevin phases.
class DphiSource {
public:
    DphiSource(const RunConfig& cfg, double delta) : scalar_(cfg.dphi) {
        if (cfg.dphi_mode == DphiMode::langevin_derived) {
            std::vector<double> grid;
            double lo = delta - cfg.omega_max - 1.0, hi = delta + cfg.omega_max + 1.0;
            for (double d = lo; d <= hi + 1e-9; d += cfg.sweep_delta_step) grid.push_back(d);
            if (cfg.coefficients_path) {
                auto prof = load_coefficients(*cfg.coefficients_path);
                sweep_ = phase_shift_sweep(prof, cfg.phi0, cfg.medium.cell_length_m, grid,
                                           cfg.steps);
            } else {
                sweep_ = phase_shift_sweep(cfg.medium, cfg.phi0, grid, cfg.steps);
            }
            delta_ = delta;
            derived_ = true;
        }
    }

    double at(double omega_a) const {
        return derived_ ? dphi_for_phase_model(sweep_, delta_, omega_a) : scalar_;
    }

private:
    double scalar_;
    bool derived_ = false;
    PhaseSweep sweep_;
    double delta_ = 0.0;
};

} // namespace detail

// Recover the zero-analysis-frequency min/max channels from the input trace.
inline std::vector<std::string> run_deconvolve(const RunConfig& cfg) {
    auto trace = detail::require_trace(cfg);
    auto zero = detail::deconvolve_trace(trace, cfg.deconv);
    detail::OutputSession out(cfg.out_dir);
    out.write("deconvolved.csv",
              render_noise_trace(zero, "zero-analysis-frequency noise recovered by deconvolution"));
    auto grid = zero.grid.values();
    out.write("deconvolved.svg",
              svg_line_plot("Noise at 0 MHz analysis frequency", "two-photon detuning (MHz)",
                            "noise power (dB)",
                            {SvgSeries{"min phase", "#c0392b", grid, detail::to_db(zero.n_min)},
                             SvgSeries{"max phase", "#2c3e50", grid, detail::to_db(zero.n_max)}}));
    return out.commit();
}

// Squeezing spectrum at one detuning, synthesized from the recovered curve.
inline std::vector<std::string> run_spectrum(const RunConfig& cfg) {
    auto trace = detail::require_trace(cfg);
    auto zero = detail::deconvolve_trace(trace, cfg.deconv);
    auto spec = synthesize_spectrum(zero.grid, zero.n_min, cfg.delta, cfg.omega_grid());
    detail::OutputSession out(cfg.out_dir);
    out.write("spectrum.csv", render_spectrum(spec, "delta_mhz = " + format_double(cfg.delta)));
    out.write("spectrum.svg",
              svg_line_plot("Squeezing spectrum at delta = " + format_double(cfg.delta) + " MHz",
                            "analysis frequency (MHz)", "noise power (dB)",
                            {SvgSeries{"minimum noise", "#c0392b", spec.omega_mhz, spec.noise_db}}));
    return out.commit();
}

// Shot-noise-limit frequency for each requested detuning.
inline std::vector<std::string> run_snlf_table(const RunConfig& cfg) {
    auto trace = detail::require_trace(cfg);
    auto zero = detail::deconvolve_trace(trace, cfg.deconv);
    auto omega = cfg.omega_grid();
    std::vector<SnlfRow> rows;
    std::vector<SvgSeries> series;
    const char* palette[] = {"#c0392b", "#d58512", "#2980b9", "#27ae60", "#8e44ad", "#16a085"};
    for (std::size_t i = 0; i < cfg.table_deltas.size(); ++i) {
        double d = cfg.table_deltas[i];
        auto spec = synthesize_spectrum(zero.grid, zero.n_min, d, omega);
        auto s = snlf(spec.omega_mhz, spec.noise_db);
        if (!s.frequency_mhz)
            throw data_error("core-model",
                             s.ever_below_snl
                                 ? "spectrum at delta = " + format_double(d) +
                                       " MHz stays squeezed through the whole analysis grid"
                                 : "spectrum at delta = " + format_double(d) +
                                       " MHz shows no squeezing");
        rows.push_back(SnlfRow{d, *s.frequency_mhz});
        series.push_back(SvgSeries{"delta = " + format_double(d) + " MHz",
                                   palette[i % 6], spec.omega_mhz, spec.noise_db});
    }
    detail::OutputSession out(cfg.out_dir);
    out.write("snlf_table.csv", render_snlf_table(rows));
    out.write("snlf_table.svg",
              svg_line_plot("Synthesized squeezing spectra", "analysis frequency (MHz)",
                            "noise power (dB)", series));
    return out.commit();
}

// Scanned-minimum envelope versus the trace locked at lock_omega.
inline std::vector<std::string> run_phase_compare(const RunConfig& cfg) {
    auto trace = detail::require_trace(cfg);
    auto zero = detail::deconvolve_trace(trace, cfg.deconv);
    auto phase = build_phase_resolved(zero);
    detail::DphiSource dphi(cfg, cfg.delta);

    auto lock = n_min(phase, cfg.lock_omega, cfg.delta, dphi.at(cfg.lock_omega));
    PhaseCompareCurves curves;
    for (double w : cfg.omega_grid()) {
        double dp = dphi.at(w);
        curves.omega_mhz.push_back(w);
        curves.n_min_db.push_back(linear_to_db(n_min(phase, w, cfg.delta, dp).value));
        curves.n_locked_db.push_back(
            linear_to_db(n_locked(phase, w, cfg.delta, dp, lock.phi_star)));
    }
    detail::OutputSession out(cfg.out_dir);
    out.write("phase_compare.csv",
              render_phase_compare(curves, "delta_mhz = " + format_double(cfg.delta) +
                                               ", lock_omega_mhz = " +
                                               format_double(cfg.lock_omega)));
    out.write("phase_compare.svg",
              svg_line_plot("Scanned minimum vs locked noise, delta = " +
                                format_double(cfg.delta) + " MHz",
                            "analysis frequency (MHz)", "noise power (dB)",
                            {SvgSeries{"scanned minimum", "#c0392b", curves.omega_mhz,
                                       curves.n_min_db},
                             SvgSeries{"locked at " + format_double(cfg.lock_omega) + " MHz",
                                       "#2c3e50", curves.omega_mhz, curves.n_locked_db}}));
    return out.commit();
}

// Accumulated propagation phase versus detuning (and the coefficients used).
inline std::vector<std::string> run_langevin_sweep(const RunConfig& cfg) {
    auto grid = cfg.sweep_delta_grid();
    PhaseSweep sweep;
    std::vector<cplx> a_used, b_used;
    if (cfg.coefficients_path) {
        auto prof = load_coefficients(*cfg.coefficients_path);
        sweep = phase_shift_sweep(prof, cfg.phi0, cfg.medium.cell_length_m, grid, cfg.steps);
        for (double d : grid) {
            auto ab = prof.at(d);
            a_used.push_back(ab.A);
            b_used.push_back(ab.B);
        }
    } else {
        sweep = phase_shift_sweep(cfg.medium, cfg.phi0, grid, cfg.steps);
        for (double d : grid) {
            auto ab = ab_phenomenological(cfg.medium, d);
            a_used.push_back(ab.A);
            b_used.push_back(ab.B);
        }
    }
    PhaseSweep shifted;
    shifted.delta_mhz = sweep.delta_mhz;
    for (double p : sweep.phase_rad) shifted.phase_rad.push_back(p - cfg.phi0);

    detail::OutputSession out(cfg.out_dir);
    out.write("langevin_sweep.csv",
              render_phase_sweep(shifted, "accumulated phase shift across the cell"));
    auto ugrid = UniformGrid::from_samples(grid, "cli-io");
    out.write("coefficients.csv", render_coefficients(ugrid, a_used, b_used));
    out.write("langevin_sweep.svg",
              svg_line_plot("Propagation phase shift", "two-photon detuning (MHz)",
                            "phase shift (rad)",
                            {SvgSeries{"phi_alpha - phi_0", "#2980b9", shifted.delta_mhz,
                                       shifted.phase_rad}}));
    return out.commit();
}

} // namespace sqzrot
