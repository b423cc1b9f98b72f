#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "sqzrot/langevin.hpp"
#include "sqzrot/units.hpp"

// Produces the phenomenological-backend defaults shipped in MediumParams.
//
// The microscopic theory behind the A and B coefficients is out of scope, so
// the complex-Lorentzian stand-in has four free parameters. They are fitted
// here, once, against the published phase-sweep features: peak shift close to
// 0.3 pi located near 10 MHz, negligible shift (< 0.02 pi) below 0 MHz and
// above 20 MHz.
//
// Procedure (fully deterministic):
//   1. enumerate a coarse grid of (raman_center, raman_width, gain_strength);
//   2. for each candidate, solve lightshift_scale by bisection so the sweep's
//      peak equals 0.30 pi exactly (on the 0.25 MHz grid over [-30, 40]);
//   3. keep candidates whose peak sits in [5, 15] MHz and whose tails stay
//      below 0.8 * 0.02 pi (20% safety margin);
//   4. among those, pick the smoothest sweep (smallest maximum step between
//      adjacent grid points), tie-broken by peak location closest to 10 MHz;
//   5. round lightshift_scale to two decimals and confirm the windows still
//      hold.

namespace {

struct SweepStats {
    double peak, peak_loc, tail, max_step;
};

SweepStats evaluate(const sqzrot::MediumParams& p, const std::vector<double>& grid) {
    auto sweep = sqzrot::phase_shift_sweep(p, 0.0, grid, 1000);
    SweepStats s{-1e300, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double shift = sweep.phase_rad[i];
        if (shift > s.peak) {
            s.peak = shift;
            s.peak_loc = grid[i];
        }
        if (grid[i] < 0.0 || grid[i] > 20.0) s.tail = std::max(s.tail, std::abs(shift));
        if (i > 0)
            s.max_step = std::max(s.max_step, std::abs(sweep.phase_rad[i] - sweep.phase_rad[i - 1]));
    }
    return s;
}

std::optional<double> solve_lightshift(sqzrot::MediumParams p, const std::vector<double>& grid,
                                       double target_peak) {
    double lo = -4.0, hi = -0.25; // peak grows monotonically with |lightshift_scale|
    auto peak_at = [&](double s) {
        p.lightshift_scale = s;
        return evaluate(p, grid).peak;
    };
    if (peak_at(lo) < target_peak || peak_at(hi) > target_peak) return std::nullopt;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (peak_at(mid) >= target_peak ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

int main() {
    using sqzrot::constants::pi;
    std::vector<double> grid;
    for (double d = -30.0; d <= 40.0 + 1e-9; d += 0.25) grid.push_back(d);
    const double target_peak = 0.30 * pi;
    const double tail_limit = 0.8 * 0.02 * pi;

    std::optional<sqzrot::MediumParams> best;
    SweepStats best_stats{};
    for (double center : {9.75, 10.0, 10.25, 10.5}) {
        for (double width : {0.4, 0.5, 0.6}) {
            for (double gain : {0.06, 0.08, 0.10}) {
                sqzrot::MediumParams p;
                p.raman_center_mhz = center;
                p.raman_width_mhz = width;
                p.gain_strength = gain;
                auto s = solve_lightshift(p, grid, target_peak);
                if (!s) continue;
                p.lightshift_scale = *s;
                auto stats = evaluate(p, grid);
                bool feasible = stats.peak_loc >= 5.0 && stats.peak_loc <= 15.0 &&
                                stats.tail < tail_limit;
                std::printf("center=%5.2f width=%4.2f gain=%4.2f scale=%8.4f | "
                            "peak=%.4fpi @ %5.2f MHz tail=%.4fpi step=%.3f rad %s\n",
                            center, width, gain, *s, stats.peak / pi, stats.peak_loc,
                            stats.tail / pi, stats.max_step, feasible ? "" : "(rejected)");
                if (!feasible) continue;
                bool better = !best || stats.max_step < best_stats.max_step - 1e-9 ||
                              (std::abs(stats.max_step - best_stats.max_step) <= 1e-9 &&
                               std::abs(stats.peak_loc - 10.0) <
                                   std::abs(best_stats.peak_loc - 10.0));
                if (better) {
                    best = p;
                    best_stats = stats;
                }
            }
        }
    }

    if (!best) {
        std::fprintf(stderr, "no feasible candidate found\n");
        return 1;
    }
    best->lightshift_scale = std::round(best->lightshift_scale * 100.0) / 100.0;
    auto final_stats = evaluate(*best, grid);
    bool ok = final_stats.peak >= 0.25 * pi && final_stats.peak <= 0.35 * pi &&
              final_stats.peak_loc >= 5.0 && final_stats.peak_loc <= 15.0 &&
              final_stats.tail < 0.02 * pi;
    std::printf("\nselected defaults:\n"
                "  raman_center_mhz = %.6g\n"
                "  raman_width_mhz  = %.6g\n"
                "  gain_strength    = %.6g\n"
                "  lightshift_scale = %.6g\n"
                "peak %.4f pi at %.2f MHz, tail %.4f pi, max adjacent step %.3f rad [%s]\n",
                best->raman_center_mhz, best->raman_width_mhz, best->gain_strength,
                best->lightshift_scale, final_stats.peak / pi, final_stats.peak_loc,
                final_stats.tail / pi, final_stats.max_step, ok ? "OK" : "OUT OF WINDOW");
    return ok ? 0 : 1;
}
