#include "levylab/sim.hpp"

#include <cmath>
#include <numbers>

#include "levylab/quadrature.hpp"

namespace levylab {

SmallJumpMode small_jump_mode_from_id(std::string_view id) {
    if (id == "drop") return SmallJumpMode::Drop;
    if (id == "gaussian") return SmallJumpMode::Gaussian;
    throw std::domain_error("unknown small-jump mode '" + std::string(id) +
                            "' (expected drop or gaussian)");
}

std::string small_jump_mode_id(SmallJumpMode mode) {
    return mode == SmallJumpMode::Drop ? "drop" : "gaussian";
}

JumpProcessModel::JumpProcessModel(int dim, ScaleCalculus calc, double cutoff,
                                   SmallJumpMode mode,
                                   std::uint64_t max_events)
    : dim_(dim), calc_(std::move(calc)), cutoff_(cutoff), mode_(mode),
      max_events_(max_events) {
    sphere_area(dim_); // validates
    if (!(cutoff_ >= 0.0) || !(cutoff_ < 1.0)) {
        throw std::domain_error(
            "JumpProcessModel: cutoff must lie in [0,1)");
    }
    if (max_events_ == 0) {
        throw std::domain_error("JumpProcessModel: max_events must be >= 1");
    }
    if (cutoff_ == 0.0) {
        tail_mass_at_cutoff_ = calc_.tail_mass_limit();
        if (!std::isfinite(tail_mass_at_cutoff_)) {
            throw std::range_error(
                "JumpProcessModel: cutoff 0 needs an integrable kernel "
                "(finite tail-mass limit); this family has infinite "
                "small-jump activity");
        }
        dropped_std_rate_ = 0.0;
    } else {
        tail_mass_at_cutoff_ = calc_.tail_mass(cutoff_);
        const auto& fn = calc_.intensity_function();
        auto second_moment = [&fn](double s) { return s * fn(s); };
        const double removed_variance =
            sphere_area(dim_) *
            integrate_to_zero(second_moment, cutoff_, calc_.quad_rel_tol())
                .value;
        dropped_std_rate_ = std::sqrt(removed_variance / dim_);
    }
    jump_rate_ = sphere_area(dim_) * tail_mass_at_cutoff_;
}

double JumpProcessModel::drop_bias_indicator(double radius) const {
    if (!(radius > 0.0) || !(radius < 1.0)) {
        throw std::domain_error("drop_bias_indicator: radius out of (0,1)");
    }
    const double horizon = 1.0 / calc_.tail_mass(radius); // exit-time scale
    const double displacement =
        dropped_std_rate_ * std::sqrt(static_cast<double>(dim_) * horizon);
    return displacement / radius;
}

double JumpProcessModel::sample_jump_radius(double u) const {
    if (!(u > 0.0) || !(u < 1.0)) {
        throw std::domain_error("sample_jump_radius: u must lie in (0,1)");
    }
    return calc_.inverse_tail_mass((1.0 - u) * tail_mass_at_cutoff_);
}

Vec sample_direction(int dim, PathRng& rng) {
    switch (dim) {
    case 1:
        return Vec{rng.uniform() < 0.5 ? -1.0 : 1.0, 0.0, 0.0};
    case 2: {
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        return Vec{std::cos(angle), std::sin(angle), 0.0};
    }
    case 3: {
        // uniform z plus uniform longitude
        const double zc = 2.0 * rng.uniform() - 1.0;
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        const double rad = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        return Vec{rad * std::cos(angle), rad * std::sin(angle), zc};
    }
    default:
        throw std::domain_error("sample_direction: dimension must be 1-3");
    }
}

namespace {

// generic driver: runs jumps (and Brownian bridges in Gaussian mode) until
// `stop` accepts the position; stop(pos, at_step_end) returns true to end
struct StopOutcome {
    bool stopped = false;
};

// One Brownian sub-stepped segment of length dt. Returns true if `stop`
// fired at some sub-step; position/time are updated in place.
template <class StopFn>
bool diffuse_segment(const JumpProcessModel& model, Vec& position,
                     double& time, double dt, const Vec& domain_center,
                     double domain_radius, PathRng& rng, StopFn&& stop,
                     std::uint64_t& events) {
    const double sigma = model.small_jump_std();
    if (sigma == 0.0 || dt <= 0.0) {
        time += dt;
        return false;
    }
    const int dim = model.dim();
    const double variance_rate = sigma * sigma * dim;
    double remaining = dt;
    while (remaining > 0.0) {
        ++events;
        if (events >= model.max_events()) return false; // cap checked by caller
        const double gap = domain_radius - distance(position, domain_center);
        double step = (gap > 0.0)
                          ? std::max(1e-12 * dt,
                                     0.25 * gap * gap / variance_rate)
                          : remaining;
        step = std::min(step, remaining);
        const double scale = sigma * std::sqrt(step);
        Vec increment{scale * rng.normal(), 0.0, 0.0};
        if (dim >= 2) increment.y = scale * rng.normal();
        if (dim >= 3) increment.z = scale * rng.normal();
        position += increment;
        time += step;
        remaining -= step;
        if (stop(position)) return true;
    }
    return false;
}

} // namespace

ExitRecord simulate_exit(const JumpProcessModel& model, const Vec& start,
                         const Vec& center, double radius, PathRng& rng) {
    if (!(radius > 0.0) || !(radius < 1.0)) {
        throw std::domain_error("simulate_exit: radius must lie in (0,1)");
    }
    if (!(distance(start, center) < radius)) {
        throw std::domain_error(
            "simulate_exit: start must lie inside the ball");
    }

    ExitRecord record;
    Vec position = start;
    Vec previous = start;
    double time = 0.0;
    const double rate = model.jump_rate();
    std::uint64_t events = 0;

    auto outside = [&](const Vec& p) {
        return distance(p, center) >= radius;
    };

    while (true) {
        if (events >= model.max_events()) {
            record.exit_time = time;
            record.exit_position = position;
            record.pre_exit_position = previous;
            record.complete = false;
            return record;
        }
        ++events;

        // fixed consumption order per jump: waiting time, radius, direction
        const double dt = rng.exponential(rate);

        if (model.mode() == SmallJumpMode::Gaussian) {
            Vec before = position;
            if (diffuse_segment(
                    model, position, time, dt, center, radius, rng,
                    [&](const Vec& p) { return outside(p); }, events)) {
                record.exit_time = time;
                record.exit_position = position;
                record.pre_exit_position = before;
                return record;
            }
            if (events >= model.max_events()) continue; // cap surfaced above
        } else {
            time += dt;
        }

        const double jump_radius = model.sample_jump_radius(rng.uniform_open());
        const Vec direction = sample_direction(model.dim(), rng);

        previous = position;
        position += jump_radius * direction;
        ++record.jump_count;

        if (outside(position)) {
            record.exit_time = time;
            record.exit_position = position;
            record.pre_exit_position = previous;
            return record;
        }
    }
}

ExitRecord simulate_hit_or_exit(const JumpProcessModel& model,
                                const Vec& start, const RegionPredicate& target,
                                const Vec& domain_center, double domain_radius,
                                PathRng& rng) {
    if (!(domain_radius > 0.0) || !(domain_radius < 1.0)) {
        throw std::domain_error(
            "simulate_hit_or_exit: domain radius must lie in (0,1)");
    }
    if (!(distance(start, domain_center) < domain_radius)) {
        throw std::domain_error(
            "simulate_hit_or_exit: start must lie inside the domain ball");
    }

    ExitRecord record;
    Vec position = start;
    Vec previous = start;
    double time = 0.0;
    const double rate = model.jump_rate();
    std::uint64_t events = 0;

    // the target wins ties: a move that both enters the target and leaves
    // the domain counts as a hit
    auto classify = [&](const Vec& p) -> std::optional<bool> {
        if (target(p)) return true;
        if (distance(p, domain_center) >= domain_radius) return false;
        return std::nullopt;
    };

    if (auto initial = classify(position)) {
        record.hit_flag = *initial; // start already decides (degenerate use)
        record.exit_position = position;
        record.pre_exit_position = position;
        return record;
    }

    while (true) {
        if (events >= model.max_events()) {
            record.exit_time = time;
            record.exit_position = position;
            record.pre_exit_position = previous;
            record.complete = false;
            return record;
        }
        ++events;

        const double dt = rng.exponential(rate);

        if (model.mode() == SmallJumpMode::Gaussian) {
            Vec before = position;
            std::optional<bool> verdict;
            if (diffuse_segment(
                    model, position, time, dt, domain_center, domain_radius,
                    rng,
                    [&](const Vec& p) {
                        verdict = classify(p);
                        return verdict.has_value();
                    },
                    events)) {
                record.exit_time = time;
                record.exit_position = position;
                record.pre_exit_position = before;
                record.hit_flag = *verdict;
                return record;
            }
            if (events >= model.max_events()) continue;
        } else {
            time += dt;
        }

        const double jump_radius = model.sample_jump_radius(rng.uniform_open());
        const Vec direction = sample_direction(model.dim(), rng);

        previous = position;
        position += jump_radius * direction;
        ++record.jump_count;

        if (auto verdict = classify(position)) {
            record.exit_time = time;
            record.exit_position = position;
            record.pre_exit_position = previous;
            record.hit_flag = *verdict;
            return record;
        }
    }
}

} // namespace levylab
