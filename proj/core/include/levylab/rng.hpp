#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace levylab {

/// Random stream for one simulated path, derived deterministically from
/// (global seed, path index). Uniform and normal variates are generated
/// with explicit formulas on top of mt19937_64 so that identical inputs
/// give bit-identical sequences on every platform.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(path_index),
            static_cast<std::uint32_t>(path_index >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0,1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0,1); rejects the single zero value.
    double uniform_open() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    double exponential(double rate) {
        return -std::log(uniform_open()) / rate;
    }

    /// Standard normal via Box-Muller; the paired variate is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace levylab
