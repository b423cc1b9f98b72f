#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "sqzrot/csv.hpp"
#include "sqzrot/langevin.hpp"

using namespace sqzrot;

namespace {

// Fine fixed-step RK4 on the coupled field equation d alpha/dz = A alpha + B conj(alpha),
// used as an independent oracle for the closed-form propagator.
cplx rk4_field(cplx A, cplx B, cplx alpha0, double L, int steps) {
    auto f = [&](cplx a) { return A * a + B * std::conj(a); };
    double h = L / steps;
    cplx a = alpha0;
    for (int i = 0; i < steps; ++i) {
        cplx k1 = f(a);
        cplx k2 = f(a + 0.5 * h * k1);
        cplx k3 = f(a + 0.5 * h * k2);
        cplx k4 = f(a + h * k3);
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return a;
}

double wrap_pi(double x) {
    double r = std::remainder(x, 2.0 * constants::pi);
    return r;
}

} // namespace

TEST_CASE("phenomenological gain line") {
    MediumParams p; // fitted defaults

    SECTION("line center: real, maximal gain") {
        auto c = ab_phenomenological(p, p.raman_center_mhz);
        CHECK(c.B.imag() == Catch::Approx(0.0).margin(1e-15));
        for (double off : {0.1, 0.5, 2.0})
            CHECK(std::abs(c.B) > std::abs(ab_phenomenological(p, p.raman_center_mhz + off).B));
    }

    SECTION("half width: |B| down by sqrt(2), phase at +-pi/4") {
        double gamma = 0.5 * p.raman_width_mhz;
        auto c0 = ab_phenomenological(p, p.raman_center_mhz);
        auto up = ab_phenomenological(p, p.raman_center_mhz + gamma);
        auto dn = ab_phenomenological(p, p.raman_center_mhz - gamma);
        CHECK(std::abs(up.B) == Catch::Approx(std::abs(c0.B) / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(dn.B) == Catch::Approx(std::abs(c0.B) / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::arg(up.B) == Catch::Approx(constants::pi / 4.0).margin(1e-12));
        CHECK(std::arg(dn.B) == Catch::Approx(-constants::pi / 4.0).margin(1e-12));
    }

    SECTION("drive factor scales with pump, detuning, and optical depth") {
        auto base = ab_phenomenological(p, 5.0);
        MediumParams strong = p;
        strong.pump_power_mw = 400.0;
        CHECK(std::abs(ab_phenomenological(strong, 5.0).B) ==
              Catch::Approx(2.0 * std::abs(base.B)).epsilon(1e-12));
        MediumParams far = p;
        far.one_photon_detuning_ghz = 1.6;
        CHECK(std::abs(ab_phenomenological(far, 5.0).B) ==
              Catch::Approx(0.25 * std::abs(base.B)).epsilon(1e-12));
    }

    SECTION("parameter invariants") {
        MediumParams bad = p;
        bad.raman_width_mhz = 0.0;
        CHECK_THROWS_AS(ab_phenomenological(bad, 0.0), argument_error);
        bad = p;
        bad.cell_length_m = -1.0;
        CHECK_THROWS_AS(bad.validate(), argument_error);
    }
}

TEST_CASE("tabulated coefficient profiles") {
    SECTION("constant two-row file") {
        auto dir = std::filesystem::temp_directory_path() / "sqzrot_ab_const";
        std::filesystem::create_directories(dir);
        auto path = (dir / "ab.csv").string();
        {
            std::ofstream out(path);
            out << "delta_mhz,re_A,im_A,re_B,im_B\n";
            out << "-10,0.5,-0.25,3,1\n";
            out << "10,0.5,-0.25,3,1\n";
        }
        auto prof = load_coefficients(path);
        for (double d : {-10.0, -3.5, 0.0, 10.0}) {
            auto c = prof.at(d);
            CHECK(std::abs(c.A - cplx(0.5, -0.25)) < 1e-14);
            CHECK(std::abs(c.B - cplx(3.0, 1.0)) < 1e-14);
        }
        std::filesystem::remove_all(dir);
    }

    SECTION("export / import round trip") {
        MediumParams p;
        UniformGrid grid{-20.0, 0.5, 81};
        std::vector<cplx> A, B;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto c = ab_phenomenological(p, grid[i]);
            A.push_back(c.A);
            B.push_back(c.B);
        }
        auto dir = std::filesystem::temp_directory_path() / "sqzrot_ab_rt";
        std::filesystem::create_directories(dir);
        auto path = (dir / "ab.csv").string();
        atomic_write_text(path, render_coefficients(grid, A, B), "test");
        auto prof = load_coefficients(path);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto c = prof.at(grid[i]);
            CHECK(std::abs(c.A - A[i]) <= 1e-9 * std::max(1.0, std::abs(A[i])));
            CHECK(std::abs(c.B - B[i]) <= 1e-9 * std::max(1.0, std::abs(B[i])));
        }
        std::filesystem::remove_all(dir);
    }

    SECTION("non-monotone grid names the line") {
        auto dir = std::filesystem::temp_directory_path() / "sqzrot_ab_bad";
        std::filesystem::create_directories(dir);
        auto path = (dir / "ab.csv").string();
        {
            std::ofstream out(path);
            out << "delta_mhz,re_A,im_A,re_B,im_B\n0,0,0,0,0\n2,0,0,0,0\n1,0,0,0,0\n";
        }
        CHECK_THROWS_WITH(load_coefficients(path),
                          Catch::Matchers::ContainsSubstring("line 4"));
        std::filesystem::remove_all(dir);
    }
}

TEST_CASE("closed-form propagation") {
    const double L = constants::default_cell_length_m;

    SECTION("pure gain") {
        cplx a = propagate(cplx(3.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0), L);
        CHECK(std::abs(a - std::exp(3.0 * L)) < 1e-14);
    }

    SECTION("real coupling keeps the real axis invariant") {
        cplx a = propagate(cplx(0.0, 0.0), cplx(2.0, 0.0), cplx(1.0, 0.0), L);
        CHECK(std::abs(a - std::exp(2.0 * L)) < 1e-14);
    }

    SECTION("zero length returns the input") {
        cplx a0{0.3, -0.8};
        CHECK(propagate(cplx(1.0, 2.0), cplx(0.5, -0.5), a0, 0.0) == a0);
    }

    SECTION("matches a fine-step integration of the field equation") {
        std::mt19937 rng(21);
        std::uniform_real_distribution<double> u(-50.0, 50.0);
        for (int i = 0; i < 40; ++i) {
            cplx A{u(rng), u(rng)}, B{u(rng), u(rng)}, a0{1.0, 0.0};
            cplx exact = propagate(A, B, a0, L);
            cplx num = rk4_field(A, B, a0, L, 20000);
            CHECK(std::abs(exact - num) <= 1e-8 * std::abs(num));
        }
    }

    SECTION("semigroup composition") {
        std::mt19937 rng(22);
        std::uniform_real_distribution<double> u(-50.0, 50.0);
        std::uniform_real_distribution<double> split(0.1, 0.9);
        for (int i = 0; i < 40; ++i) {
            cplx A{u(rng), u(rng)}, B{u(rng), u(rng)}, a0{0.7, -0.2};
            double s = split(rng);
            cplx whole = propagate(A, B, a0, L);
            cplx parts = propagate(A, B, propagate(A, B, a0, s * L), (1.0 - s) * L);
            CHECK(std::abs(whole - parts) <= 1e-10 * std::max(1.0, std::abs(whole)));
        }
    }

    SECTION("degenerate mu (|B| = |Im A|) takes the series branch") {
        cplx A{0.0, 2.0}, B{2.0, 0.0}; // mu^2 = 4 - 4 = 0
        cplx exact = propagate(A, B, cplx(1.0, 0.0), L);
        cplx num = rk4_field(A, B, cplx(1.0, 0.0), L, 20000);
        CHECK(std::abs(exact - num) < 1e-10);
    }

    SECTION("input validation") {
        CHECK_THROWS_AS(propagate(cplx(0, 0), cplx(0, 0), cplx(1, 0), -1.0), argument_error);
        CHECK_THROWS_AS(propagate(cplx(std::nan(""), 0), cplx(0, 0), cplx(1, 0), 1.0),
                        argument_error);
    }
}

TEST_CASE("phase evolution") {
    const double L = constants::default_cell_length_m;

    SECTION("constant rotation rate") {
        CHECK(phase_evolution(cplx(0.0, 2.0), cplx(0.0, 0.0), 0.0, L) ==
              Catch::Approx(0.025).margin(1e-12));
    }

    SECTION("phi = 0 is a fixed point of a real B") {
        CHECK(phase_evolution(cplx(0.0, 0.0), cplx(5.0, 0.0), 0.0, L) == 0.0);
        // Re A alone never moves the phase
        CHECK(phase_evolution(cplx(7.0, 0.0), cplx(0.0, 0.0), 1.3, L) == 1.3);
    }

    SECTION("agrees with the phase of the closed-form propagator") {
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> u(-50.0, 50.0);
        std::uniform_real_distribution<double> ph(-constants::pi, constants::pi);
        for (int i = 0; i < 40; ++i) {
            cplx A{u(rng), u(rng)}, B{u(rng), u(rng)};
            double phi0 = ph(rng);
            cplx a0 = std::exp(cplx(0.0, phi0));
            double phi = phase_evolution(A, B, phi0, L);
            double ref = std::arg(propagate(A, B, a0, L));
            CHECK(std::abs(wrap_pi(phi - ref)) < 1e-6);
        }
    }

    SECTION("step doubling converges") {
        cplx A{1.0, 30.0}, B{-20.0, 10.0};
        double p1 = phase_evolution(A, B, 0.4, L, 1000);
        double p2 = phase_evolution(A, B, 0.4, L, 2000);
        CHECK(std::abs(p1 - p2) < 1e-8);
    }

    SECTION("divergence reports the position") {
        CHECK_THROWS_WITH(phase_evolution(cplx(0.0, std::nan("")), cplx(0, 0), 0.0, L),
                          Catch::Matchers::ContainsSubstring("z = "));
        CHECK_THROWS_AS(phase_evolution(cplx(0, 0), cplx(0, 0), 0.0, L, 0), argument_error);
    }
}

TEST_CASE("phase sweep across the detuning grid") {
    std::vector<double> grid;
    for (double d = -30.0; d <= 40.0 + 1e-9; d += 0.25) grid.push_back(d);

    SECTION("zero coefficients give a flat sweep at phi0") {
        auto sweep = phase_shift_sweep([](double) { return ABCoefficients{}; }, 0.7,
                                       constants::default_cell_length_m, grid);
        for (double v : sweep.phase_rad) CHECK(v == 0.7);
        for (double w : {0.0, 1.0, 14.0})
            CHECK(dphi_for_phase_model(sweep, -4.0, w) == 0.0);
    }

    SECTION("tabulated backend reproduces the phenomenological sweep") {
        MediumParams p;
        CoefficientProfile prof;
        prof.grid = UniformGrid{-30.0, 0.25, 281};
        for (std::size_t i = 0; i < prof.grid.size(); ++i) {
            auto c = ab_phenomenological(p, prof.grid[i]);
            prof.A.push_back(c.A);
            prof.B.push_back(c.B);
        }
        auto s1 = phase_shift_sweep(p, 0.0, grid, 400);
        auto s2 = phase_shift_sweep(prof, 0.0, p.cell_length_m, grid, 400);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(s2.phase_rad[i] == Catch::Approx(s1.phase_rad[i]).margin(1e-9));
    }

    SECTION("conjugating the coefficients negates the accumulated phase") {
        MediumParams p;
        auto fwd = phase_shift_sweep(p, 0.3, grid, 400);
        auto neg = phase_shift_sweep(
            [&](double d) {
                auto c = ab_phenomenological(p, d);
                return ABCoefficients{std::conj(c.A), std::conj(c.B)};
            },
            -0.3, p.cell_length_m, grid, 400);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(neg.phase_rad[i] == Catch::Approx(-fwd.phase_rad[i]).margin(1e-10));
    }

    SECTION("unwrapped sweep has no branch jumps") {
        MediumParams p;
        auto sweep = phase_shift_sweep(p, 0.0, grid);
        for (std::size_t i = 1; i < sweep.phase_rad.size(); ++i)
            CHECK(std::abs(sweep.phase_rad[i] - sweep.phase_rad[i - 1]) <
                  0.5 * constants::pi);
    }

    SECTION("inter-sideband shift near the resonance peak") {
        MediumParams p;
        auto sweep = phase_shift_sweep(p, 0.0, grid);
        // upper sideband at -4 + 14 = 10 MHz rides the peak; lower at -18 MHz
        // sits in the negligible tail
        double dphi = dphi_for_phase_model(sweep, -4.0, 14.0);
        CHECK(std::abs(dphi - 0.3 * constants::pi) < 0.05 * constants::pi);
        CHECK_THROWS_AS(dphi_for_phase_model(sweep, -4.0, 50.0), range_error);
    }
}
