#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "sqzrot/deconvolution.hpp"
#include "sqzrot/fft.hpp"
#include "sqzrot/fixture.hpp"

using namespace sqzrot;

namespace {

// Even about the grid midpoint -h/2 and exactly periodic over the padded
// span, so the discrete transform represents it without leakage: the one
// class of inputs where the kernel inversion is exact to machine precision.
std::vector<double> commensurate_modes(const UniformGrid& grid, double period,
                                       const std::vector<std::pair<int, double>>& modes,
                                       double offset) {
    std::vector<double> v(grid.size(), offset);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x = grid[i] + 0.5 * grid.step;
        for (auto [m, c] : modes)
            v[i] += c * std::cos(2.0 * constants::pi * m * x / period);
    }
    return v;
}

double rel_rms(const std::vector<double>& a, const std::vector<double>& b, std::size_t lo,
               std::size_t hi) {
    double err2 = 0.0, norm2 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        err2 += (a[i] - b[i]) * (a[i] - b[i]);
        norm2 += b[i] * b[i];
    }
    return std::sqrt(err2 / norm2);
}

} // namespace

TEST_CASE("radix-2 fft") {
    CHECK(next_pow2(1) == 1);
    CHECK(next_pow2(5) == 8);
    CHECK(next_pow2(1024) == 1024);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> a(64), orig;
    for (auto& z : a) z = {u(rng), u(rng)};
    orig = a;
    fft_inplace(a, false);
    fft_inplace(a, true);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - orig[i]) < 1e-12);

    // single tone lands on a single bin
    std::vector<std::complex<double>> tone(32);
    for (std::size_t i = 0; i < 32; ++i)
        tone[i] = std::exp(std::complex<double>(0.0, 2.0 * constants::pi * 5.0 * i / 32.0));
    fft_inplace(tone, false);
    CHECK(std::abs(tone[5] - 32.0) < 1e-10);
    for (std::size_t j = 0; j < 32; ++j)
        if (j != 5) CHECK(std::abs(tone[j]) < 1e-10);

    std::vector<std::complex<double>> bad(12);
    CHECK_THROWS_AS(fft_inplace(bad, false), argument_error);
}

TEST_CASE("forward model: shift and add") {
    UniformGrid grid{-30.0, 0.25, 241};

    SECTION("constant maps to twice itself") {
        std::vector<double> g(grid.size(), 1.7);
        auto r = forward_model(grid, g, 1.0);
        CHECK(r.grid.size() == grid.size() - 8);
        CHECK(r.grid.start == grid.start + 1.0);
        for (double v : r.f) CHECK(v == Catch::Approx(3.4).margin(1e-12));
    }

    SECTION("cosine picks up the factor 2 cos(0.2 pi) = 1.6180") {
        std::vector<double> g(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            g[i] = std::cos(0.2 * constants::pi * grid[i]);
        auto r = forward_model(grid, g, 1.0);
        double c = 2.0 * std::cos(0.2 * constants::pi);
        CHECK(c == Catch::Approx(1.6180).margin(1e-4));
        for (std::size_t i = 0; i < r.grid.size(); ++i)
            CHECK(r.f[i] ==
                  Catch::Approx(c * std::cos(0.2 * constants::pi * r.grid[i])).margin(1e-9));
    }

    SECTION("unit impulse splits into two unit impulses at +-a") {
        UniformGrid g1{-10.0, 1.0, 21};
        std::vector<double> g(g1.size(), 0.0);
        g[10] = 1.0; // delta = 0
        auto r = forward_model(g1, g, 1.0);
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            double expect = (r.grid[i] == -1.0 || r.grid[i] == 1.0) ? 1.0 : 0.0;
            CHECK(r.f[i] == expect);
        }
    }

    SECTION("shift must be positive and fit the grid") {
        std::vector<double> g(grid.size(), 1.0);
        CHECK_THROWS_AS(forward_model(grid, g, 0.0), argument_error);
        CHECK_THROWS_AS(forward_model(grid, g, 200.0), argument_error);
    }
}

TEST_CASE("deconvolution recovers constants and clean spectral lines") {
    SECTION("DC input, kernel = 2 at t = 0") {
        UniformGrid grid{-30.0, 0.25, 241};
        std::vector<double> f(grid.size(), 2.0 * 3.3);
        for (double eps : {0.0, 1e-4, 1e-3}) {
            DeconvolutionConfig cfg;
            cfg.eps = eps;
            auto r = deconvolve(grid, f, cfg);
            for (double v : r.g) CHECK(v == Catch::Approx(3.3).epsilon(1e-6));
        }
    }

    SECTION("single commensurate line away from kernel zeros, eps = 0") {
        // mode 13 of a 128 MHz window: t = 13/128 cycles/MHz, kernel
        // 2 cos(2 pi t) = 1.586, well clear of the zero at t = 1/4
        UniformGrid grid{-64.0, 0.25, 512};
        double T = 128.0;
        auto g_true = commensurate_modes(grid, T, {{13, 1.0}}, 0.0);
        double coeff = 2.0 * std::cos(2.0 * constants::pi * 13.0 / T);
        std::vector<double> f(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) f[i] = coeff * g_true[i];

        DeconvolutionConfig cfg;
        cfg.eps = 0.0;
        cfg.taper = Taper::none;
        cfg.pad_factor = 1;
        auto r = deconvolve(grid, f, cfg);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(r.g[i] == Catch::Approx(g_true[i]).margin(1e-9));
        CHECK(r.imag_ratio < 1e-12);
    }
}

TEST_CASE("deconvolve then forward is the identity for band-limited input") {
    // modes 3, 7, 12 of a 128 MHz period: spectrum nowhere near the kernel
    // zeros t = (2k+1)/4, so the inversion must be exact (spec tolerance 1e-6,
    // actual error is machine precision)
    UniformGrid grid{-65.0, 0.25, 520};
    auto g_true = commensurate_modes(grid, 128.0, {{3, 0.3}, {7, 0.2}, {12, 0.1}}, 2.0);
    auto fwd = forward_model(grid, g_true, 1.0);
    REQUIRE(fwd.grid.size() == 512);

    DeconvolutionConfig cfg;
    cfg.eps = 0.0;
    cfg.taper = Taper::none;
    cfg.pad_factor = 1;
    auto rec = deconvolve(fwd.grid, fwd.f, cfg);

    // compare against the true curve on the deconvolved support
    double err2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < rec.grid.size(); ++i) {
        double truth = g_true[i + 4];
        err2 += (rec.g[i] - truth) * (rec.g[i] - truth);
        norm2 += truth * truth;
    }
    CHECK(std::sqrt(err2 / norm2) < 1e-6);
}

TEST_CASE("roundtrip residual") {
    SECTION("constant input is exact") {
        UniformGrid grid{-30.0, 0.25, 241};
        std::vector<double> f(grid.size(), 2.0);
        DeconvolutionConfig cfg;
        CHECK(roundtrip_residual(grid, f, cfg) < 1e-9);
    }

    SECTION("fixture stays below 1% with the default regularization") {
        auto trace = fixture::fig2_like_trace();
        std::vector<double> f(trace.grid.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2.0 * trace.n_min[i];
        DeconvolutionConfig cfg;
        CHECK(roundtrip_residual(trace.grid, f, cfg) < 0.01);

        auto r = deconvolve(trace.grid, f, cfg);
        CHECK(r.imag_ratio < 1e-6);
    }

    SECTION("content at a kernel zero: heavier damping hurts more") {
        auto trace = fixture::fig2_like_trace();
        std::vector<double> f(trace.grid.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] = 2.0 * trace.n_min[i] +
                   0.5 * std::cos(2.0 * constants::pi * 0.25 * trace.grid[i]);
        DeconvolutionConfig soft, hard;
        soft.eps = 1e-3;
        hard.eps = 0.5;
        CHECK(roundtrip_residual(trace.grid, f, hard) >
              roundtrip_residual(trace.grid, f, soft));
    }
}

TEST_CASE("deconvolution is linear") {
    UniformGrid grid{-40.0, 0.25, 321};
    std::vector<double> f1(grid.size()), f2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double d = grid[i];
        f1[i] = 2.0 + std::exp(-0.5 * (d + 10.0) * (d + 10.0) / 16.0);
        f2[i] = 1.0 + 0.4 * std::cos(0.3 * d) * std::exp(-d * d / 400.0);
    }
    DeconvolutionConfig cfg;
    double alpha = 0.7, beta = -0.3;
    std::vector<double> mix(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) mix[i] = alpha * f1[i] + beta * f2[i];

    auto r1 = deconvolve(grid, f1, cfg);
    auto r2 = deconvolve(grid, f2, cfg);
    auto rm = deconvolve(grid, mix, cfg);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(rm.g[i] == Catch::Approx(alpha * r1.g[i] + beta * r2.g[i]).margin(1e-9));
}

TEST_CASE("translating the input translates the output") {
    // bump far from the edges, so edge samples (and thus baseline and taper)
    // are unchanged by a one-step shift
    UniformGrid grid{-60.0, 0.25, 441};
    auto bump = [](double d) { return 2.0 + std::exp(-0.5 * (d + 5.0) * (d + 5.0) / 36.0); };
    std::vector<double> f(grid.size()), fs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = bump(grid[i]);
        fs[i] = bump(grid[i] - grid.step);
    }
    DeconvolutionConfig cfg;
    auto r = deconvolve(grid, f, cfg);
    auto rs = deconvolve(grid, fs, cfg);
    for (std::size_t i = 60; i + 60 < grid.size(); ++i)
        CHECK(rs.g[i] == Catch::Approx(r.g[i - 1]).margin(1e-6));
}

TEST_CASE("off-grid shift is resampled consistently") {
    // a = 1 MHz on a 0.4 MHz grid: not an integer number of steps, so the
    // input is Lanczos-resampled onto a 1/3 MHz grid internally
    UniformGrid grid{-40.0, 0.4, 201};
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = 2.0 + std::exp(-0.5 * grid[i] * grid[i] / 64.0);
    DeconvolutionConfig cfg;
    auto r = deconvolve(grid, f, cfg);
    CHECK(r.grid.step == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(roundtrip_residual(grid, f, cfg) < 0.01);

    // integer ratio passes through without resampling
    UniformGrid half{-40.0, 0.5, 161};
    std::vector<double> fh(half.size(), 2.0);
    auto rh = deconvolve(half, fh, cfg);
    CHECK(rh.grid.step == 0.5);
    CHECK(rh.grid.size() == half.size());
}

TEST_CASE("deconvolution error contracts") {
    UniformGrid grid{-30.0, 0.25, 241};
    std::vector<double> f(grid.size(), 2.0);
    DeconvolutionConfig cfg;

    SECTION("non-finite samples are rejected with their index") {
        auto bad = f;
        bad[17] = std::nan("");
        CHECK_THROWS_WITH(deconvolve(grid, bad, cfg),
                          Catch::Matchers::ContainsSubstring("index 17"));
    }

    SECTION("grid too short for the kernel period") {
        UniformGrid tiny{0.0, 0.25, 6};
        std::vector<double> ft(tiny.size(), 2.0);
        DeconvolutionConfig c1;
        c1.pad_factor = 1;
        CHECK_THROWS_WITH(deconvolve(tiny, ft, c1),
                          Catch::Matchers::ContainsSubstring("kernel period"));
    }

    SECTION("shift larger than the grid span") {
        UniformGrid tiny{0.0, 0.25, 5};
        std::vector<double> ft(tiny.size(), 2.0);
        DeconvolutionConfig c1;
        c1.shift_a = 3.3;
        CHECK_THROWS_AS(deconvolve(tiny, ft, c1), argument_error);
    }

    SECTION("config invariants") {
        DeconvolutionConfig c1;
        c1.eps = -1.0;
        CHECK_THROWS_AS(c1.validate(), argument_error);
        DeconvolutionConfig c2;
        c2.pad_factor = 0;
        CHECK_THROWS_AS(c2.validate(), argument_error);
        DeconvolutionConfig c3;
        c3.pad_factor = 17;
        CHECK_THROWS_AS(c3.validate(), argument_error);
        DeconvolutionConfig c4;
        c4.shift_a = 0.0;
        CHECK_THROWS_AS(c4.validate(), argument_error);
    }
}
