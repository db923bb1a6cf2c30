#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "levylab/geometry.hpp"
#include "levylab/rng.hpp"
#include "levylab/scale.hpp"

namespace levylab {

/// What happens to jumps below the cutoff radius: Drop removes them (the
/// path is then an exactly simulable compound Poisson process), Gaussian
/// substitutes a Brownian motion matching their variance.
enum class SmallJumpMode { Drop, Gaussian };

SmallJumpMode small_jump_mode_from_id(std::string_view id);
std::string small_jump_mode_id(SmallJumpMode mode);

/// Translation-invariant pure-jump process with Levy density
/// intensity(|h|)/|h|^d on the punctured unit ball, jumps below `cutoff`
/// handled per SmallJumpMode. cutoff = 0 is allowed only for integrable
/// kernels (finite tail-mass limit).
///
/// Immutable; paths draw all randomness from a caller-supplied PathRng.
class JumpProcessModel {
public:
    JumpProcessModel(int dim, ScaleCalculus calc, double cutoff,
                     SmallJumpMode mode = SmallJumpMode::Drop,
                     std::uint64_t max_events = 10'000'000);

    int dim() const { return dim_; }
    const ScaleCalculus& calculus() const { return calc_; }
    double cutoff() const { return cutoff_; }
    SmallJumpMode mode() const { return mode_; }
    std::uint64_t max_events() const { return max_events_; }

    /// Total jump intensity sphere_area(d) * tail_mass(cutoff).
    double jump_rate() const { return jump_rate_; }

    /// Per-coordinate diffusion std per unit time substituted for the
    /// removed jumps; zero in Drop mode.
    double small_jump_std() const {
        return mode_ == SmallJumpMode::Gaussian ? dropped_std_rate_ : 0.0;
    }

    /// Same quantity regardless of mode, for bias reporting.
    double dropped_std_rate() const { return dropped_std_rate_; }

    /// Displacement scale the dropped jumps would contribute over one
    /// expected exit horizon from a ball of the given radius, relative to
    /// that radius. Values below 0.01 pass the default bias gate.
    double drop_bias_indicator(double radius) const;

    /// Inverse-CDF jump radius: the radius law has
    /// F(t) = 1 - tail_mass(t)/tail_mass(cutoff) on (cutoff, 1).
    double sample_jump_radius(double u) const;

private:
    int dim_;
    ScaleCalculus calc_;
    double cutoff_;
    SmallJumpMode mode_;
    std::uint64_t max_events_;
    double jump_rate_;
    double tail_mass_at_cutoff_;
    double dropped_std_rate_;
};

/// Uniform direction on {-1,+1}, the unit circle, or the unit sphere.
Vec sample_direction(int dim, PathRng& rng);

/// Outcome of one simulated excursion. exit_position lies outside the
/// queried ball, pre_exit_position inside it. `complete` is false when the
/// event cap was hit; such records carry the state reached so far.
struct ExitRecord {
    double exit_time = 0.0;
    Vec exit_position;
    Vec pre_exit_position;
    std::uint64_t jump_count = 0;
    std::optional<bool> hit_flag;
    bool complete = true;
};

/// First exit from the open ball B_radius(center), starting inside it.
/// In Drop mode exits happen exactly at jumps; in Gaussian mode Brownian
/// segments are sub-stepped conservatively and crossings are recorded at
/// step resolution.
ExitRecord simulate_exit(const JumpProcessModel& model, const Vec& start,
                         const Vec& center, double radius, PathRng& rng);

using RegionPredicate = std::function<bool(const Vec&)>;

/// Runs until the path either enters `target` (hit_flag = true) or leaves
/// the open domain ball (hit_flag = false); the target is checked first
/// when a single move does both.
ExitRecord simulate_hit_or_exit(const JumpProcessModel& model,
                                const Vec& start, const RegionPredicate& target,
                                const Vec& domain_center, double domain_radius,
                                PathRng& rng);

} // namespace levylab
