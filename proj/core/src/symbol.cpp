#include "levylab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levylab/bessel.hpp"
#include "levylab/quadrature.hpp"

namespace levylab {

double sphere_average_cos(int dim, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("sphere_average_cos: t must be nonnegative");
    }
    switch (dim) {
    case 1:
        return std::cos(t);
    case 2:
        return bessel_j0(t);
    case 3:
        return (t == 0.0) ? 1.0 : std::sin(t) / t;
    default:
        throw std::domain_error(
            "sphere_average_cos: dimension must be 1, 2 or 3");
    }
}

double ComparabilityScan::empirical_constant() const {
    if (table.empty()) return 0.0;
    return std::max(max_ratio, 1.0 / min_ratio);
}

SymbolEvaluator::SymbolEvaluator(int dim, ScaleCalculus calc,
                                 int panels_per_period, double tail_tol)
    : dim_(dim), calc_(std::move(calc)),
      panels_per_period_(panels_per_period), tail_tol_(tail_tol) {
    sphere_area(dim); // validates the dimension
    if (panels_per_period_ < 1 || panels_per_period_ > 64) {
        throw std::domain_error(
            "SymbolEvaluator: panels_per_period out of range");
    }
    if (!(tail_tol_ > 0.0) || !(tail_tol_ >= 1e-14) || !(tail_tol_ < 1.0)) {
        throw std::domain_error("SymbolEvaluator: tail_tol out of range");
    }
}

double SymbolEvaluator::exponent(double xi_norm) const {
    if (!(xi_norm >= 0.0)) {
        throw std::domain_error("exponent: |xi| must be nonnegative");
    }
    if (xi_norm == 0.0) return 0.0;

    const int dim = dim_;
    const auto& calc = calc_;
    auto integrand = [&calc, dim, xi_norm](double s) {
        return (1.0 - sphere_average_cos(dim, xi_norm * s)) *
               calc.intensity(s) / s;
    };

    const double period_slice =
        std::numbers::pi * 2.0 / (xi_norm * panels_per_period_);
    const double area = sphere_area(dim);

    if (period_slice >= 1.0) {
        // less than one panel across the whole radial range; the integrand
        // is not oscillatory there, but it still vanishes quadratically at
        // the origin, so grade toward 0
        return area * integrate_to_zero(integrand, 1.0, tail_tol_).value;
    }

    KahanSum acc;
    double err = 0.0;
    // leading panel (0, slice]: graded toward the origin
    {
        QuadratureResult head =
            integrate_to_zero(integrand, period_slice, tail_tol_);
        acc.add(head.value);
        err += head.error_estimate;
    }
    // remaining panels: one fixed high-order rule per slice
    const auto& fine = gauss_rule(32);
    const auto& coarse = gauss_rule(16);
    double lo = period_slice;
    while (lo < 1.0) {
        const double hi = std::min(lo + period_slice, 1.0);
        const double fine_value = fixed_gauss(integrand, lo, hi, fine);
        acc.add(fine_value);
        err += std::abs(fine_value - fixed_gauss(integrand, lo, hi, coarse));
        lo = hi;
    }

    const double value = acc.value();
    if (err > tail_tol_ * std::max(std::abs(value), 1e-300) * 10.0) {
        throw QuadratureError(
            "exponent: oscillatory quadrature missed its tolerance, achieved "
            "relative error " +
                std::to_string(err / std::abs(value)),
            err / std::abs(value));
    }
    return area * value;
}

ComparabilityScan SymbolEvaluator::scan(double xi_min, double xi_max,
                                        int points) const {
    if (!(xi_min >= 5.0) || !(xi_min < xi_max) || !(xi_max <= 1e14)) {
        throw std::domain_error(
            "scan: need 5 <= xi_min < xi_max <= 1e14");
    }
    if (points < 2) {
        throw std::domain_error("scan: need at least two grid points");
    }

    ComparabilityScan result;
    result.min_ratio = std::numeric_limits<double>::infinity();
    result.max_ratio = 0.0;
    result.table.reserve(static_cast<std::size_t>(points));

    const double log_lo = std::log(xi_min);
    const double log_hi = std::log(xi_max);
    for (int i = 0; i < points; ++i) {
        const double frac =
            (points == 1) ? 0.0 : static_cast<double>(i) / (points - 1);
        const double xi = std::exp(log_lo + frac * (log_hi - log_lo));
        SymbolPoint point;
        point.xi = xi;
        point.psi = exponent(xi);
        point.tail_mass_at_inv_xi = calc_.tail_mass(1.0 / xi);
        point.ratio = point.psi / point.tail_mass_at_inv_xi;
        result.min_ratio = std::min(result.min_ratio, point.ratio);
        result.max_ratio = std::max(result.max_ratio, point.ratio);
        result.table.push_back(point);
    }
    return result;
}

} // namespace levylab
