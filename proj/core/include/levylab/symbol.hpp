#pragma once

#include <vector>

#include "levylab/scale.hpp"

namespace levylab {

/// Average of cos(t * w_1) over the unit sphere in R^dim:
/// cos(t) for d=1, J0(t) for d=2, sin(t)/t for d=3.
double sphere_average_cos(int dim, double t);

struct SymbolPoint {
    double xi = 0.0;
    double psi = 0.0;
    double tail_mass_at_inv_xi = 0.0;
    double ratio = 0.0; // psi / tail_mass(1/xi)
};

struct ComparabilityScan {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::vector<SymbolPoint> table;

    /// One number summarising two-sided comparability on the grid.
    double empirical_constant() const;
};

/// Characteristic exponent of the symmetric pure-jump process whose Levy
/// density is intensity(|h|)/|h|^d on the punctured unit ball:
///
///   exponent(xi) = sphere_area(d) *
///                  integral over (0,1) of (1 - avg cos) intensity(s)/s ds.
///
/// The oscillatory factor is integrated on panels aligned to the half
/// period pi/xi (panels_per_period = 2 by default), each with a fixed
/// 32-point rule, summed with compensated accumulation; the leading panel
/// is graded toward 0 where the integrand loses smoothness.
///
/// Immutable; safe for unrestricted concurrent use.
class SymbolEvaluator {
public:
    SymbolEvaluator(int dim, ScaleCalculus calc, int panels_per_period = 2,
                    double tail_tol = 1e-10);

    int dim() const { return dim_; }
    const ScaleCalculus& calculus() const { return calc_; }

    /// psi as a function of |xi|; nonnegative, zero at zero.
    double exponent(double xi_norm) const;

    /// Evaluates exponent(xi)/tail_mass(1/xi) on a log-spaced grid.
    /// Requires 5 <= xi_min < xi_max <= 1e14 and points >= 2.
    ComparabilityScan scan(double xi_min, double xi_max, int points) const;

private:
    int dim_;
    ScaleCalculus calc_;
    int panels_per_period_;
    double tail_tol_;
};

} // namespace levylab
