#pragma once

namespace levylab {

/// Bessel function of the first kind, order zero.
/// Power series below |x| = 13, Hankel asymptotic expansion above;
/// worst absolute error is below 1e-12 over the whole real line.
double bessel_j0(double x);

} // namespace levylab
