#include "levylab/scale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levylab/quadrature.hpp"

namespace levylab {

namespace {

constexpr double kInverseFloor = 1e-15;
constexpr double kLn2 = std::numbers::ln2;

double require_radius(double s, const char* who) {
    if (!(s > 0.0) || !(s < 1.0)) {
        throw std::domain_error(std::string(who) +
                                ": radius must lie in (0,1), got " +
                                std::to_string(s));
    }
    return s;
}

} // namespace

std::string family_id(ScaleFamily family) {
    switch (family) {
    case ScaleFamily::RvLog2: return "rv-log2";
    case ScaleFamily::Power: return "power";
    case ScaleFamily::Log: return "log";
    case ScaleFamily::Const: return "const";
    case ScaleFamily::InvLog: return "invlog";
    case ScaleFamily::InvLog2: return "invlog2";
    case ScaleFamily::Custom: return "custom";
    }
    throw std::domain_error("family_id: unknown family");
}

ScaleFamily family_from_id(std::string_view id) {
    if (id == "rv-log2") return ScaleFamily::RvLog2;
    if (id == "power") return ScaleFamily::Power;
    if (id == "log") return ScaleFamily::Log;
    if (id == "const") return ScaleFamily::Const;
    if (id == "invlog") return ScaleFamily::InvLog;
    if (id == "invlog2") return ScaleFamily::InvLog2;
    throw std::domain_error("unknown intensity family id '" + std::string(id) +
                            "' (expected rv-log2, power, log, const, invlog "
                            "or invlog2)");
}

ScaleFunction ScaleFunction::make(ScaleFamily family, double beta) {
    ScaleFunction fn;
    fn.family = family;
    fn.beta = beta;
    switch (family) {
    case ScaleFamily::RvLog2:
    case ScaleFamily::Power:
        if (!(beta > 0.0) || !(beta < 2.0)) {
            throw std::domain_error(
                "ScaleFunction: beta must lie in (0,2), got " +
                std::to_string(beta));
        }
        fn.alpha = beta;
        break;
    case ScaleFamily::Log:
    case ScaleFamily::Const:
    case ScaleFamily::InvLog:
    case ScaleFamily::InvLog2:
        fn.alpha = 0.0;
        break;
    case ScaleFamily::Custom:
        throw std::domain_error(
            "ScaleFunction::make: use ScaleFunction::custom for custom "
            "profiles");
    }
    return fn;
}

ScaleFunction ScaleFunction::make(std::string_view id, double beta) {
    return make(family_from_id(id), beta);
}

ScaleFunction ScaleFunction::custom(std::function<double(double)> eval,
                                    double alpha) {
    if (!eval) {
        throw std::domain_error("ScaleFunction::custom: empty evaluator");
    }
    if (!(alpha >= 0.0) || !(alpha < 2.0)) {
        throw std::domain_error(
            "ScaleFunction::custom: declared index must lie in [0,2), got " +
            std::to_string(alpha));
    }
    ScaleFunction fn;
    fn.family = ScaleFamily::Custom;
    fn.alpha = alpha;
    fn.custom_eval = std::move(eval);
    return fn;
}

double ScaleFunction::operator()(double s) const {
    require_radius(s, "intensity");
    double value = 0.0;
    switch (family) {
    case ScaleFamily::RvLog2: {
        const double lg = std::log(2.0 / s);
        value = std::pow(s, -beta) * lg * lg;
        break;
    }
    case ScaleFamily::Power:
        value = std::pow(s, -beta);
        break;
    case ScaleFamily::Log:
        value = std::log(2.0 / s);
        break;
    case ScaleFamily::Const:
        value = 1.0;
        break;
    case ScaleFamily::InvLog:
        value = 1.0 / std::log(2.0 / s);
        break;
    case ScaleFamily::InvLog2: {
        const double lg = std::log(2.0 / s);
        value = 1.0 / (lg * lg);
        break;
    }
    case ScaleFamily::Custom:
        value = custom_eval(s);
        break;
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error("intensity: profile returned a non-positive "
                                "or non-finite value at s = " +
                                std::to_string(s));
    }
    return value;
}

double sphere_area(int dim) {
    switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default:
        throw std::domain_error("sphere_area: dimension must be 1, 2 or 3");
    }
}

ScaleCalculus::ScaleCalculus(ScaleFunction fn, double quad_rel_tol,
                             double inv_abs_tol)
    : fn_(std::move(fn)), quad_rel_tol_(quad_rel_tol),
      inv_abs_tol_(inv_abs_tol) {
    if (!(quad_rel_tol_ > 0.0) || !(quad_rel_tol_ < 1.0)) {
        throw std::domain_error("ScaleCalculus: quad_rel_tol out of range");
    }
    if (!(inv_abs_tol_ > 0.0) || !(inv_abs_tol_ < 1e-2)) {
        throw std::domain_error("ScaleCalculus: inv_abs_tol out of range");
    }
    if (fn_.family == ScaleFamily::Custom && !fn_.custom_eval) {
        throw std::domain_error("ScaleCalculus: custom profile lacks an "
                                "evaluator");
    }
}

bool ScaleCalculus::has_closed_form() const {
    switch (fn_.family) {
    case ScaleFamily::Power:
    case ScaleFamily::Log:
    case ScaleFamily::Const:
    case ScaleFamily::InvLog2:
        return true;
    default:
        return false;
    }
}

bool ScaleCalculus::has_closed_form_inverse() const {
    switch (fn_.family) {
    case ScaleFamily::Power:
    case ScaleFamily::Const:
    case ScaleFamily::InvLog2:
        return true;
    default:
        return false;
    }
}

double ScaleCalculus::closed_form_tail_mass(double r) const {
    switch (fn_.family) {
    case ScaleFamily::Power:
        // (r^-beta - 1)/beta via expm1 to stay exact near r = 1
        return std::expm1(-fn_.beta * std::log(r)) / fn_.beta;
    case ScaleFamily::Log:
        // antiderivative of ln(2/s)/s is -ln(2/s)^2/2; the difference
        // factors as ln(1/r) ln(4/r) / 2, which avoids cancellation
        return 0.5 * std::log(1.0 / r) * std::log(4.0 / r);
    case ScaleFamily::Const:
        return -std::log(r);
    case ScaleFamily::InvLog2:
        // 1/ln2 - 1/ln(2/r), written cancellation-free
        return std::log(1.0 / r) / (kLn2 * std::log(2.0 / r));
    default:
        throw std::logic_error("closed_form_tail_mass: no closed form");
    }
}

double ScaleCalculus::closed_form_inverse(double y) const {
    switch (fn_.family) {
    case ScaleFamily::Power:
        return std::exp(-std::log1p(fn_.beta * y) / fn_.beta);
    case ScaleFamily::Const:
        return std::exp(-y);
    case ScaleFamily::InvLog2: {
        // solve y = t / (ln2 (ln2 + t)) for t = ln(1/r)
        const double denom = 1.0 - y * kLn2;
        const double t = y * kLn2 * kLn2 / denom;
        return std::exp(-t);
    }
    default:
        throw std::logic_error("closed_form_inverse: no closed form");
    }
}

double ScaleCalculus::tail_mass_limit() const {
    if (fn_.family == ScaleFamily::InvLog2) return 1.0 / kLn2;
    return std::numeric_limits<double>::infinity();
}

double ScaleCalculus::tail_mass(double r) const {
    if (r == 1.0) return 0.0;
    require_radius(r, "tail_mass");
    if (has_closed_form()) return closed_form_tail_mass(r);
    return tail_mass_by_quadrature(r);
}

double ScaleCalculus::tail_mass_by_quadrature(double r) const {
    if (r == 1.0) return 0.0;
    require_radius(r, "tail_mass_by_quadrature");
    const auto& fn = fn_;
    auto integrand = [&fn](double s) { return fn(s) / s; };
    return integrate(integrand, r, 1.0, quad_rel_tol_).value;
}

double ScaleCalculus::inverse_tail_mass(double y) const {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw std::domain_error("inverse_tail_mass: argument must be finite "
                                "and nonnegative");
    }
    if (y == 0.0) return 1.0;
    const double limit = tail_mass_limit();
    if (y >= limit) {
        throw std::range_error(
            "inverse_tail_mass: value " + std::to_string(y) +
            " is at or above the tail-mass limit " + std::to_string(limit));
    }
    if (has_closed_form_inverse()) return closed_form_inverse(y);

    double lo = kInverseFloor, hi = 1.0;
    double f_lo = tail_mass(lo); // decreasing: f_lo is the largest value
    if (y >= f_lo) {
        throw std::range_error(
            "inverse_tail_mass: value " + std::to_string(y) +
            " needs a radius below the bisection floor 1e-15");
    }
    double f_hi = 0.0;
    while (hi - lo > inv_abs_tol_) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = tail_mass(mid);
        if (f_mid > y) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    // secant refinement inside the final bracket
    double a = lo, b = hi, fa = f_lo - y, fb = f_hi - y;
    for (int i = 0; i < 8 && fa != fb; ++i) {
        const double c = a - fa * (b - a) / (fb - fa);
        if (!(c > lo) || !(c < hi)) break;
        const double fc = tail_mass(c) - y;
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
        if (std::abs(b - a) < 0.25 * inv_abs_tol_) break;
    }
    return 0.5 * (a + b);
}

double ScaleCalculus::dilate(double a, double r) const {
    if (!(a >= 1.0)) {
        throw std::domain_error("dilate: factor must be >= 1, got " +
                                std::to_string(a));
    }
    require_radius(r, "dilate");
    if (a == 1.0) return r;
    const double dilated = inverse_tail_mass(tail_mass(r) / a);
    return std::max(dilated, r); // clamp away roundoff inversions
}

double ScaleCalculus::annulus_measure(double rho1, double rho2,
                                      int dim) const {
    const double area = sphere_area(dim);
    if (!(rho1 > 0.0) || !(rho1 <= rho2) || !(rho2 <= 1.0)) {
        throw std::domain_error(
            "annulus_measure: need 0 < rho1 <= rho2 <= 1");
    }
    if (rho1 == rho2) return 0.0;
    const double outer_mass = tail_mass(rho2);
    if (outer_mass == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return area * std::log(tail_mass(rho1) / outer_mass);
}

std::vector<double> ScaleCalculus::dyadic_radii(double r, double a,
                                                int n) const {
    require_radius(r, "dyadic_radii");
    if (!(a > 1.0)) {
        throw std::domain_error("dyadic_radii: factor must exceed 1");
    }
    if (n < 1) {
        throw std::domain_error("dyadic_radii: need at least one level");
    }
    const double base = tail_mass(0.5 * r);
    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(n));
    double level = base;
    for (int k = 1; k <= n; ++k) {
        if (level >= tail_mass_limit()) {
            throw std::range_error(
                "dyadic_radii: level " + std::to_string(k) +
                " is unreachable; the kernel is integrable and the "
                "tail-mass limit " + std::to_string(tail_mass_limit()) +
                " caps the sequence");
        }
        radii.push_back(k == 1 ? 0.5 * r : inverse_tail_mass(level));
        level *= a;
    }
    return radii;
}

double ScaleCalculus::karamata_ratio(double rho, double r) const {
    if (!(rho > -1.0)) {
        throw std::domain_error("karamata_ratio: exponent must exceed -1");
    }
    require_radius(r, "karamata_ratio");
    const auto& fn = fn_;
    auto integrand = [&fn, rho](double s) { return std::pow(s, rho) * fn(s); };
    const double numerator =
        integrate_to_zero(integrand, r, quad_rel_tol_).value;
    return numerator / (std::pow(r, rho + 1.0) * fn_(r));
}

double ScaleCalculus::potter_constant(
    double delta, std::span<const std::pair<double, double>> pairs) const {
    if (!(delta > 0.0)) {
        throw std::domain_error("potter_constant: delta must be positive");
    }
    const double alpha = fn_.alpha;
    double constant = 0.0;
    for (const auto& [r, s] : pairs) {
        require_radius(r, "potter_constant");
        require_radius(s, "potter_constant");
        const double ratio = fn_(r) / fn_(s);
        const double x = r / s;
        const double envelope =
            std::max(std::pow(x, -alpha - delta), std::pow(x, -alpha + delta));
        constant = std::max(constant, ratio / envelope);
    }
    return constant;
}

} // namespace levylab
