#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqzrot/sqzrot.hpp"

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<double> dphi;
    std::optional<double> lock_omega;
    long seed = 0; // reserved; no stochastic code paths yet
};

void add_common(CLI::App* sub, CommonFlags& f, bool with_delta, bool with_phase) {
    sub->add_option("--config", f.config, "run configuration file")->required();
    sub->add_option("--out", f.out, "output directory (overrides the config)");
    sub->add_option("--eps", f.eps, "deconvolution regularization override");
    if (with_delta)
        sub->add_option("--delta", f.delta, "two-photon detuning override (MHz)");
    if (with_phase) {
        sub->add_option("--dphi", f.dphi, "inter-sideband phase shift override (rad)");
        sub->add_option("--lock-omega", f.lock_omega, "lock analysis frequency override (MHz)");
    }
    sub->add_option("--seed", f.seed, "reserved");
}

sqzrot::RunConfig load_with_overrides(const CommonFlags& f) {
    auto cfg = sqzrot::parse_run_config(f.config);
    if (f.out) cfg.out_dir = *f.out;
    if (f.eps) cfg.deconv.eps = *f.eps;
    if (f.delta) cfg.delta = *f.delta;
    if (f.dphi) cfg.dphi = *f.dphi;
    if (f.lock_omega) cfg.lock_omega = *f.lock_omega;
    cfg.deconv.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-dependent rotation of the squeezing noise ellipse: "
                 "deconvolution, spectra, SNLF tables, phase comparison, phase sweeps"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::function<std::vector<std::string>(const sqzrot::RunConfig&)> action;

    auto* c_dec = app.add_subcommand("deconvolve", "recover the zero-analysis-frequency curve");
    add_common(c_dec, flags, false, false);
    c_dec->callback([&] { action = sqzrot::run_deconvolve; });

    auto* c_spec = app.add_subcommand("spectrum", "synthesize a squeezing spectrum at one detuning");
    add_common(c_spec, flags, true, false);
    c_spec->callback([&] { action = sqzrot::run_spectrum; });

    auto* c_snlf = app.add_subcommand("snlf-table", "shot-noise-limit frequencies per detuning");
    add_common(c_snlf, flags, false, false);
    c_snlf->callback([&] { action = sqzrot::run_snlf_table; });

    auto* c_phase = app.add_subcommand("phase-compare",
                                       "scanned-minimum envelope vs phase-locked noise");
    add_common(c_phase, flags, true, true);
    c_phase->callback([&] { action = sqzrot::run_phase_compare; });

    auto* c_lang = app.add_subcommand("langevin-sweep", "propagation phase shift versus detuning");
    add_common(c_lang, flags, false, false);
    c_lang->callback([&] { action = sqzrot::run_langevin_sweep; });

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = load_with_overrides(flags);
        auto written = action(cfg);
        for (const auto& p : written) std::printf("wrote %s\n", p.c_str());
        return 0;
    } catch (const sqzrot::error& e) {
        std::fprintf(stderr, "error %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
