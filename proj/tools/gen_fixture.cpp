#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "sqzrot/csv.hpp"
#include "sqzrot/fixture.hpp"

// Regenerates the shipped synthetic data files. The curves are analytic
// stand-ins with the experiment's qualitative features (squeezing dip near
// -2 MHz, excess noise near +18 MHz); they are not measurements.

int main(int argc, char** argv) {
    CLI::App app{"write the synthetic noise-trace fixtures"};
    std::string out_dir = "data";
    app.add_option("--out", out_dir, "output directory");
    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(out_dir);
        auto fig2 = sqzrot::fixture::fig2_like_trace(1.0);
        auto ss = sqzrot::fixture::single_sided_trace(1.0);
        std::string p1 = (std::filesystem::path(out_dir) / "fig2_like.csv").string();
        std::string p2 = (std::filesystem::path(out_dir) / "single_sided.csv").string();
        sqzrot::atomic_write_text(
            p1,
            sqzrot::render_noise_trace(
                fig2, "synthetic fixture, analysis frequency 1 MHz; generated by gen_fixture"),
            "cli-io");
        sqzrot::atomic_write_text(
            p2,
            sqzrot::render_noise_trace(
                ss,
                "synthetic single-sided fixture, analysis frequency 1 MHz; generated by gen_fixture"),
            "cli-io");
        std::printf("wrote %s\nwrote %s\n", p1.c_str(), p2.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
