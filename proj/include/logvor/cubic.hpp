#pragma once

#include <array>
#include <vector>

namespace logvor {

/// Sufficient statistics of a 2x2 sample for the bivariate correlation
/// cubic: a = (S11 + S22) / 2, b = S12.
struct CubicCoeffs {
    double a = 0.0;
    double b = 0.0;
};

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 strictly inside (lo, hi),
/// ascending and deduplicated at 1e-10. Roots come from the companion
/// matrix eigenvalues followed by one Newton polish.
std::vector<double> cubic_roots_in_interval(double c3, double c2, double c1, double c0,
                                            double lo, double hi);

/// Coefficients {c3, c2, c1, c0} of f(x) = x^3 - b x^2 - (1 - 2a) x - b.
std::array<double, 4> bivariate_cubic(CubicCoeffs s);

/// Discriminant of the bivariate cubic, -4[b^4 - (a^2 + 8a - 11) b^2 + (2a - 1)^3].
/// Positive iff the cubic has three distinct real roots.
double bivariate_discriminant(double a, double b);

/// Coefficients of f_m(x) = (m-1)x^3 + ((m-2)(a-1) - (m-1)b)x^2 + (2a-1)x - b,
/// whose roots in (-1/(m-1), 1) are the equicorrelation critical points.
std::array<double, 4> equicorrelation_cubic(int m, double a, double b);

double eval_cubic(const std::array<double, 4>& c, double x);

} // namespace logvor
