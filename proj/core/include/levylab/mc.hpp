#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levylab/estimate.hpp"
#include "levylab/sim.hpp"

namespace levylab {

/// Probability that the ball B_r(center) is left within time horizon t,
/// started at x0. Binomial estimate over n independent paths whose streams
/// derive from (seed, path index); n >= 100.
Estimate estimate_exit_tail(const JumpProcessModel& model, const Vec& x0,
                            const Vec& center, double r, double t,
                            std::uint64_t n, std::uint64_t seed);

/// Mean exit time from B_r(center) started at x0.
Estimate estimate_exit_mean(const JumpProcessModel& model, const Vec& x0,
                            const Vec& center, double r, std::uint64_t n,
                            std::uint64_t seed);

/// Probability that the exit position from B_r(center) lands outside
/// B_s(center); requires 2r < s < 1.
Estimate estimate_far_exit(const JumpProcessModel& model, const Vec& x0,
                           const Vec& center, double r, double s,
                           std::uint64_t n, std::uint64_t seed);

/// Half annulus r <= |z - center| < dilate(a, r) cut by the half-space
/// (z - center).x >= 0. By rotational symmetry it carries exactly half the
/// annulus reference mass. Callable as a region predicate.
struct HalfAnnulus {
    Vec center;
    double inner = 0.0;
    double outer = 0.0;

    bool operator()(const Vec& z) const {
        const Vec offset = z - center;
        const double dist = norm(offset);
        return dist >= inner && dist < outer && offset.x >= 0.0;
    }
};

/// Requires r in (0, 1/2) and a > 1.
HalfAnnulus make_half_annulus(const ScaleCalculus& calc, const Vec& center,
                              double r, double a);

/// Probability of entering the half annulus before leaving the ball
/// B_{dilate(a,r)}(center), started at y with |y - center| < r/2.
Estimate estimate_hitting(const JumpProcessModel& model, const Vec& y,
                          const Vec& center, double r, double a,
                          std::uint64_t n, std::uint64_t seed);

/// Boundary payoff probe: u(x) = E_x[payoff(exit position of B_radius)] is
/// estimated per grid point; such u is harmonic for the process inside the
/// ball. Grid points must lie in B_{radius/4}(center).
struct HarmonicProbe {
    std::function<double(const Vec&)> payoff;
    double payoff_min = 0.0;
    double payoff_max = 1.0;
    Vec center;
    double radius = 0.0;
    std::vector<Vec> grid;
    std::vector<Estimate> values; // one per grid point, filled by estimate
};

void estimate_harmonic(const JumpProcessModel& model, HarmonicProbe& probe,
                       std::uint64_t n_per_point, std::uint64_t seed);

struct RegularityFit {
    double gamma = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int pairs_used = 0;
    int pairs_total = 0;
    double noise_floor = 0.0; // median combined stderr over pairs
};

/// Least-squares slope of ln|u(x)-u(y)| against -ln tail_mass(|x-y|) over
/// grid pairs whose difference clears three combined standard errors, with
/// a percentile bootstrap confidence interval. Throws InsufficientSignal
/// when fewer than five pairs pass the gate.
RegularityFit fit_regularity_exponent(const HarmonicProbe& probe,
                                      const ScaleCalculus& calc,
                                      std::uint64_t bootstrap_seed,
                                      int bootstrap_rounds = 500);

} // namespace levylab
