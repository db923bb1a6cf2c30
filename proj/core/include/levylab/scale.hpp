#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "levylab/errors.hpp"

namespace levylab {

/// Built-in radial intensity families on (0,1). `beta` enters the first two
/// only; the regular-variation index at zero is -beta for those and 0 for
/// the rest.
///
///   RvLog2  : s^-beta * ln(2/s)^2
///   Power   : s^-beta
///   Log     : ln(2/s)
///   Const   : 1
///   InvLog  : 1 / ln(2/s)
///   InvLog2 : 1 / ln(2/s)^2   (integrable kernel; finite tail-mass limit)
enum class ScaleFamily { RvLog2, Power, Log, Const, InvLog, InvLog2, Custom };

std::string family_id(ScaleFamily family);
ScaleFamily family_from_id(std::string_view id);

/// Radial jump-intensity profile: a family tag plus its parameters.
/// Custom profiles must declare their own index alpha in [0,2).
struct ScaleFunction {
    ScaleFamily family = ScaleFamily::Const;
    double beta = 1.0;
    double alpha = 0.0;
    std::function<double(double)> custom_eval;

    static ScaleFunction make(ScaleFamily family, double beta = 1.0);
    static ScaleFunction make(std::string_view id, double beta = 1.0);
    static ScaleFunction custom(std::function<double(double)> eval, double alpha);

    /// Pointwise evaluation; throws std::domain_error outside (0,1) and if a
    /// custom profile returns a non-positive or non-finite value.
    double operator()(double s) const;
};

/// Surface measure of the unit sphere in R^d (2, 2*pi, 4*pi for d = 1,2,3).
double sphere_area(int dim);

/// Calculus built on one intensity profile:
///
///   tail_mass(r)         = integral over (r,1] of intensity(s)/s ds
///   inverse_tail_mass(y) = the unique r with tail_mass(r) = y
///   dilate(a, r)         = inverse_tail_mass(tail_mass(r) / a)
///   annulus_measure      = mass of the reference measure
///                          intensity(|x|) / (tail_mass(|x|) |x|^d) dx
///
/// tail_mass is strictly decreasing with tail_mass(1) = 0; its limit at 0+
/// may be finite (InvLog2) or infinite. Closed forms are used for Power,
/// Log, Const and InvLog2; the rest go through adaptive quadrature at
/// quad_rel_tol. Inversion without a closed form bisects on
/// [1e-15, 1] to inv_abs_tol and polishes with secant steps.
///
/// Instances are immutable and safe for unrestricted concurrent use.
class ScaleCalculus {
public:
    explicit ScaleCalculus(ScaleFunction fn, double quad_rel_tol = 1e-10,
                           double inv_abs_tol = 1e-12);

    const ScaleFunction& intensity_function() const { return fn_; }
    double index() const { return fn_.alpha; }
    double quad_rel_tol() const { return quad_rel_tol_; }
    double inv_abs_tol() const { return inv_abs_tol_; }
    bool has_closed_form() const;

    /// tail_mass limit as r -> 0+; +infinity unless the kernel is integrable.
    double tail_mass_limit() const;

    double intensity(double s) const { return fn_(s); }

    /// Closed form when the family has one, adaptive quadrature otherwise.
    /// Domain: 0 < r <= 1.
    double tail_mass(double r) const;

    /// Always the quadrature route; exists so the two paths can be compared.
    double tail_mass_by_quadrature(double r) const;

    /// Throws std::range_error when y is at or above a finite
    /// tail_mass_limit(), or when the result would fall below the 1e-15
    /// bisection floor of a family without a closed-form inverse.
    double inverse_tail_mass(double y) const;

    /// Intrinsic dilation: tail_mass(dilate(a,r)) = tail_mass(r)/a, a >= 1.
    /// Always >= r (equal when a = 1) and < 1 for r in (0,1).
    double dilate(double a, double r) const;

    /// Reference-measure mass of the annulus rho1 <= |x| < rho2 in R^dim:
    /// sphere_area(dim) * ln(tail_mass(rho1)/tail_mass(rho2)), exact because
    /// the radial density integrates -ln tail_mass. Returns +infinity when
    /// rho2 = 1 (tail_mass zero) and rho1 < 1.
    double annulus_measure(double rho1, double rho2, int dim) const;

    /// radii[k-1] = inverse_tail_mass(tail_mass(r/2) * a^(k-1)), k = 1..n;
    /// strictly decreasing, radii[0] = r/2, and each step is one intrinsic
    /// contraction: dilate(a, radii[k]) = radii[k-1]. Throws std::range_error
    /// when a finite tail-mass limit makes the requested depth unreachable.
    std::vector<double> dyadic_radii(double r, double a, int n) const;

    /// integral over (0,r) of s^rho intensity(s) ds, divided by
    /// r^(rho+1) intensity(r); tends to 1/(rho+1) as r -> 0 for slowly
    /// varying intensities.
    double karamata_ratio(double rho, double r) const;

    /// Smallest C with intensity(r)/intensity(s) <=
    /// C max((r/s)^(-alpha-delta), (r/s)^(-alpha+delta)) over the given
    /// pairs; a growth-bound diagnostic, not an estimate of a limit.
    double potter_constant(double delta,
                           std::span<const std::pair<double, double>> pairs) const;

private:
    double closed_form_tail_mass(double r) const;
    double closed_form_inverse(double y) const;
    bool has_closed_form_inverse() const;

    ScaleFunction fn_;
    double quad_rel_tol_;
    double inv_abs_tol_;
};

} // namespace levylab
