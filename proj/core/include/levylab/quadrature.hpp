#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "levylab/errors.hpp"

namespace levylab {

/// Gauss-Legendre rule on [-1,1]; nodes/weights are computed once per order
/// by Newton iteration on the Legendre polynomial.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int order); // cached; orders 16 and 32 are used

/// Compensated (Kahan) accumulator for long panel sums.
class KahanSum {
public:
    void add(double x) {
        double y = x - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

template <class F>
double fixed_gauss(F&& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    KahanSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    }
    return half * acc.value();
}

namespace detail {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(F&& f, double a, double b) {
    const double coarse = fixed_gauss(f, a, b, gauss_rule(16));
    const double fine = fixed_gauss(f, a, b, gauss_rule(32));
    return Panel{a, b, fine, std::abs(fine - coarse)};
}

} // namespace detail

/// Globally adaptive integration of f over [a,b]: the panel with the largest
/// error estimate is bisected until the summed estimate meets rel_tol.
/// Throws QuadratureError when the panel budget runs out first.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol,
                           int max_panels = 4000) {
    QuadratureResult out;
    if (!(a < b)) return out;

    std::priority_queue<detail::Panel> queue;
    queue.push(detail::make_panel(f, a, b));
    int panels = 1;

    double total_value = queue.top().value;
    double total_error = queue.top().error;

    while (total_error > rel_tol * std::abs(total_value) + 1e-300 &&
           panels < max_panels) {
        detail::Panel worst = queue.top();
        queue.pop();
        total_value -= worst.value;
        total_error -= worst.error;

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable in double precision
            total_value += worst.value;
            total_error += worst.error;
            break;
        }
        detail::Panel left = detail::make_panel(f, worst.a, mid);
        detail::Panel right = detail::make_panel(f, mid, worst.b);
        total_value += left.value + right.value;
        total_error += left.error + right.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    // re-sum panel values in a compensated pass for the final answer
    KahanSum acc;
    double err = 0.0;
    while (!queue.empty()) {
        acc.add(queue.top().value);
        err += queue.top().error;
        queue.pop();
    }
    out.value = acc.value();
    out.error_estimate = err;
    out.panels = panels;

    if (err > rel_tol * std::abs(out.value) + 1e-300) {
        const double rel = err / (std::abs(out.value) + 1e-300);
        throw QuadratureError(
            "adaptive quadrature did not converge: achieved relative error " +
                std::to_string(rel),
            rel);
    }
    return out;
}

/// Integration of f over (0, b] when f has an integrable singularity at 0:
/// panels are graded geometrically toward the origin until the projected
/// remainder is negligible. Throws QuadratureError if contributions do not
/// decay (a divergent integrand).
template <class F>
QuadratureResult integrate_to_zero(F&& f, double b, double rel_tol,
                                   int max_refinements = 800) {
    QuadratureResult out;
    if (!(b > 0.0)) return out;

    KahanSum acc;
    double err = 0.0;
    int panels = 0;
    double hi = b;
    double prev_piece = -1.0;
    double remainder = 0.0;

    for (int k = 0; k < max_refinements && hi > 1e-300; ++k) {
        QuadratureResult piece = integrate(f, 0.5 * hi, hi, rel_tol, 400);
        acc.add(piece.value);
        err += piece.error_estimate;
        panels += piece.panels;

        const double mag = std::abs(piece.value);
        // project the remaining tail from the observed decay ratio
        double ratio = (prev_piece > 0.0) ? mag / prev_piece : 1.0;
        remainder = (ratio < 0.95) ? mag * ratio / (1.0 - ratio) : mag * 20.0;
        prev_piece = mag;
        hi *= 0.5;

        if (k >= 3 && remainder <= 0.5 * rel_tol * std::abs(acc.value())) {
            out.value = acc.value();
            out.error_estimate = err + remainder;
            out.panels = panels;
            return out;
        }
    }
    const double rel = (remainder + err) / (std::abs(acc.value()) + 1e-300);
    throw QuadratureError(
        "graded quadrature toward 0 did not converge (divergent integrand?): "
        "achieved relative error " +
            std::to_string(rel),
        rel);
}

} // namespace levylab
