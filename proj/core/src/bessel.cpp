#include "levylab/bessel.hpp"

#include <cmath>
#include <numbers>

namespace levylab {

namespace {

constexpr double kSeriesAsymptoticSplit = 13.0;

// sum_k (-1)^k (x/2)^{2k} / (k!)^2, accumulated in extended precision since
// the terms reach ~1e4 near the split while the sum stays O(1)
double j0_series(double x) {
    const long double q = 0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::abs(static_cast<double>(term)) < 1e-19) break;
    }
    return static_cast<double>(sum);
}

// Hankel expansion J0(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4,
// with coefficients a_k = a_{k-1} * (-(2k-1)^2) / (8k); truncated at the
// smallest term (the series is asymptotic, not convergent)
double j0_asymptotic(double x) {
    long double term = 1.0L; // a_k / x^k, tracked incrementally
    long double p = 0.0L, q = 0.0L;
    long double prev = 1e300L;
    for (int k = 0; k < 40; ++k) {
        if (std::abs(static_cast<double>(term)) > prev) break;
        prev = std::abs(static_cast<double>(term));
        const int m = k / 2;
        const long double signed_t = (m % 2) ? -term : term;
        if (k % 2 == 0) {
            p += signed_t;
        } else {
            q += signed_t;
        }
        term *= -static_cast<long double>(2 * k + 1) * (2 * k + 1) /
                (8.0L * (k + 1) * x);
    }
    const double w = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (static_cast<double>(p) * std::cos(w) -
            static_cast<double>(q) * std::sin(w));
}

} // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    return (x < kSeriesAsymptoticSplit) ? j0_series(x) : j0_asymptotic(x);
}

} // namespace levylab
