#include "levylab/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

#include "levylab/errors.hpp"
#include "levylab/parallel.hpp"

namespace levylab {

unsigned default_thread_count() {
    if (const char* env = std::getenv("LEVYLAB_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1 && parsed <= 256) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min(hw ? hw : 1u, 16u);
}

void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& fn,
                  unsigned threads) {
    if (n == 0) return;
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, n));
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (threads * 8));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::uint64_t begin =
                    next.fetch_add(chunk, std::memory_order_relaxed);
                if (begin >= n) break;
                const std::uint64_t end = std::min(begin + chunk, n);
                try {
                    for (std::uint64_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& worker : pool) worker.join();
    if (error) std::rethrow_exception(error);
}

namespace {

// Fold per-path samples in path-index order so the estimate is identical
// no matter how many workers produced them.
struct PathSample {
    double value = 0.0;
    bool complete = true;
};

template <class PathFn>
Estimate estimate_over_paths(std::uint64_t n, std::uint64_t seed,
                             PathFn&& path_value) {
    std::vector<PathSample> samples(n);
    parallel_for(n, [&](std::uint64_t i) {
        PathRng rng(seed, i);
        samples[i] = path_value(rng);
    });
    Estimate est;
    for (const PathSample& s : samples) {
        if (s.complete) {
            est.add(s.value);
        } else {
            est.add_incomplete();
        }
    }
    return est;
}

void require_paths(std::uint64_t n, const char* who) {
    if (n < 100) {
        throw std::domain_error(std::string(who) +
                                ": need at least 100 paths");
    }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 round over seed xor salt
    std::uint64_t z = seed ^ (salt * 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

Estimate estimate_exit_tail(const JumpProcessModel& model, const Vec& x0,
                            const Vec& center, double r, double t,
                            std::uint64_t n, std::uint64_t seed) {
    require_paths(n, "estimate_exit_tail");
    if (!(t >= 0.0)) {
        throw std::domain_error("estimate_exit_tail: horizon must be >= 0");
    }
    return estimate_over_paths(n, seed, [&](PathRng& rng) {
        ExitRecord rec = simulate_exit(model, x0, center, r, rng);
        return PathSample{rec.exit_time <= t ? 1.0 : 0.0, rec.complete};
    });
}

Estimate estimate_exit_mean(const JumpProcessModel& model, const Vec& x0,
                            const Vec& center, double r, std::uint64_t n,
                            std::uint64_t seed) {
    require_paths(n, "estimate_exit_mean");
    return estimate_over_paths(n, seed, [&](PathRng& rng) {
        ExitRecord rec = simulate_exit(model, x0, center, r, rng);
        return PathSample{rec.exit_time, rec.complete};
    });
}

Estimate estimate_far_exit(const JumpProcessModel& model, const Vec& x0,
                           const Vec& center, double r, double s,
                           std::uint64_t n, std::uint64_t seed) {
    require_paths(n, "estimate_far_exit");
    if (!(2.0 * r < s) || !(s < 1.0)) {
        throw std::domain_error("estimate_far_exit: need 2r < s < 1");
    }
    return estimate_over_paths(n, seed, [&](PathRng& rng) {
        ExitRecord rec = simulate_exit(model, x0, center, r, rng);
        const bool far = distance(rec.exit_position, center) >= s;
        return PathSample{far ? 1.0 : 0.0, rec.complete};
    });
}

HalfAnnulus make_half_annulus(const ScaleCalculus& calc, const Vec& center,
                              double r, double a) {
    if (!(r > 0.0) || !(r < 0.5)) {
        throw std::domain_error("make_half_annulus: r must lie in (0,1/2)");
    }
    if (!(a > 1.0)) {
        throw std::domain_error("make_half_annulus: a must exceed 1");
    }
    return HalfAnnulus{center, r, calc.dilate(a, r)};
}

Estimate estimate_hitting(const JumpProcessModel& model, const Vec& y,
                          const Vec& center, double r, double a,
                          std::uint64_t n, std::uint64_t seed) {
    require_paths(n, "estimate_hitting");
    const HalfAnnulus target =
        make_half_annulus(model.calculus(), center, r, a);
    if (!(distance(y, center) < 0.5 * r)) {
        throw std::domain_error(
            "estimate_hitting: start must lie in B_{r/2}(center)");
    }
    return estimate_over_paths(n, seed, [&](PathRng& rng) {
        ExitRecord rec = simulate_hit_or_exit(model, y, target, center,
                                              target.outer, rng);
        return PathSample{rec.hit_flag.value_or(false) ? 1.0 : 0.0,
                          rec.complete};
    });
}

void estimate_harmonic(const JumpProcessModel& model, HarmonicProbe& probe,
                       std::uint64_t n_per_point, std::uint64_t seed) {
    require_paths(n_per_point, "estimate_harmonic");
    if (!probe.payoff) {
        throw std::domain_error("estimate_harmonic: probe lacks a payoff");
    }
    if (!(probe.radius > 0.0) || !(probe.radius < 1.0)) {
        throw std::domain_error(
            "estimate_harmonic: probe radius must lie in (0,1)");
    }
    for (const Vec& point : probe.grid) {
        if (!(distance(point, probe.center) < 0.25 * probe.radius)) {
            throw std::domain_error(
                "estimate_harmonic: grid points must lie in the quarter "
                "ball around the probe center");
        }
    }
    probe.values.assign(probe.grid.size(), Estimate{});
    for (std::size_t k = 0; k < probe.grid.size(); ++k) {
        const Vec& point = probe.grid[k];
        probe.values[k] = estimate_over_paths(
            n_per_point, mix_seed(seed, k), [&](PathRng& rng) {
                ExitRecord rec = simulate_exit(model, point, probe.center,
                                               probe.radius, rng);
                return PathSample{probe.payoff(rec.exit_position),
                                  rec.complete};
            });
    }
}

namespace {

struct FitPoint {
    double log_tail = 0.0; // -ln tail_mass(|x-y|)
    double log_gap = 0.0;  // ln |u(x)-u(y)|
};

double slope(const std::vector<FitPoint>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const FitPoint& p : pts) {
        sx += p.log_tail;
        sy += p.log_gap;
        sxx += p.log_tail * p.log_tail;
        sxy += p.log_tail * p.log_gap;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw InsufficientSignal(
            "fit_regularity_exponent: a single separation scale cannot "
            "identify a slope");
    }
    return (n * sxy - sx * sy) / denom;
}

} // namespace

RegularityFit fit_regularity_exponent(const HarmonicProbe& probe,
                                      const ScaleCalculus& calc,
                                      std::uint64_t bootstrap_seed,
                                      int bootstrap_rounds) {
    if (probe.values.size() != probe.grid.size() || probe.grid.size() < 2) {
        throw std::domain_error(
            "fit_regularity_exponent: probe has no filled values");
    }

    std::vector<FitPoint> pts;
    std::vector<double> sigmas;
    int total = 0;
    for (std::size_t i = 0; i < probe.grid.size(); ++i) {
        for (std::size_t j = i + 1; j < probe.grid.size(); ++j) {
            const double separation = distance(probe.grid[i], probe.grid[j]);
            if (!(separation > 0.0) || !(separation < 1.0)) continue;
            ++total;
            const double gap =
                std::abs(probe.values[i].mean() - probe.values[j].mean());
            const double se_i = probe.values[i].standard_error();
            const double se_j = probe.values[j].standard_error();
            const double sigma = std::sqrt(se_i * se_i + se_j * se_j);
            sigmas.push_back(sigma);
            if (gap <= 3.0 * sigma || gap <= 0.0) continue;
            pts.push_back(FitPoint{-std::log(calc.tail_mass(separation)),
                                   std::log(gap)});
        }
    }

    RegularityFit fit;
    fit.pairs_total = total;
    fit.pairs_used = static_cast<int>(pts.size());
    if (!sigmas.empty()) {
        std::nth_element(sigmas.begin(), sigmas.begin() + sigmas.size() / 2,
                         sigmas.end());
        fit.noise_floor = sigmas[sigmas.size() / 2];
    }
    if (pts.size() < 5) {
        throw InsufficientSignal(
            "fit_regularity_exponent: only " + std::to_string(pts.size()) +
            " of " + std::to_string(total) +
            " grid pairs clear the 3-sigma noise gate; increase paths or "
            "widen the grid");
    }

    fit.gamma = slope(pts);

    // percentile bootstrap over pairs
    std::vector<double> replicates;
    replicates.reserve(static_cast<std::size_t>(bootstrap_rounds));
    PathRng rng(bootstrap_seed, 0xB007ull);
    std::vector<FitPoint> resampled(pts.size());
    for (int round = 0; round < bootstrap_rounds; ++round) {
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const std::size_t pick = static_cast<std::size_t>(
                rng.uniform() * static_cast<double>(pts.size()));
            resampled[k] = pts[std::min(pick, pts.size() - 1)];
        }
        try {
            replicates.push_back(slope(resampled));
        } catch (const InsufficientSignal&) {
            // degenerate resample; skip it
        }
    }
    if (replicates.size() < 16) {
        throw InsufficientSignal(
            "fit_regularity_exponent: bootstrap produced too few usable "
            "replicates");
    }
    std::sort(replicates.begin(), replicates.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(replicates.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, replicates.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return replicates[lo] * (1.0 - frac) + replicates[hi] * frac;
    };
    fit.ci_low = quantile(0.025);
    fit.ci_high = quantile(0.975);
    return fit;
}

} // namespace levylab
