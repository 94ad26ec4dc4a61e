#include "logvor/cubic.hpp"

#include "logvor/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace logvor {

double eval_cubic(const std::array<double, 4>& c, double x) {
    return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

std::vector<double> cubic_roots_in_interval(double c3, double c2, double c1, double c0,
                                            double lo, double hi) {
    if (c3 == 0.0 || !std::isfinite(c3)) {
        throw Error(ErrorKind::DegenerateLeadingCoefficient, "cubic needs a nonzero x^3 coefficient");
    }
    const std::array<double, 4> coef{c3, c2, c1, c0};
    Eigen::Matrix3d companion;
    companion << -c2 / c3, -c1 / c3, -c0 / c3,
                 1.0, 0.0, 0.0,
                 0.0, 1.0, 0.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(companion, false);
    const auto ev = es.eigenvalues();

    std::vector<double> roots;
    for (int k = 0; k < 3; ++k) {
        const double re = ev(k).real();
        if (std::abs(ev(k).imag()) > 1e-8 * (1.0 + std::abs(re))) continue;
        double x = re;
        const double fx = eval_cubic(coef, x);
        const double dfx = (3.0 * c3 * x + 2.0 * c2) * x + c1;
        if (dfx != 0.0) {
            const double polished = x - fx / dfx;
            if (std::isfinite(polished) && std::abs(eval_cubic(coef, polished)) <= std::abs(fx)) x = polished;
        }
        if (x > lo && x < hi) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-10) out.push_back(r);
    return out;
}

std::array<double, 4> bivariate_cubic(CubicCoeffs s) {
    return {1.0, -s.b, 2.0 * s.a - 1.0, -s.b};
}

double bivariate_discriminant(double a, double b) {
    const double b2 = b * b;
    const double t = 2.0 * a - 1.0;
    return -4.0 * (b2 * b2 - (a * a + 8.0 * a - 11.0) * b2 + t * t * t);
}

std::array<double, 4> equicorrelation_cubic(int m, double a, double b) {
    const double mm = static_cast<double>(m);
    return {mm - 1.0, (mm - 2.0) * (a - 1.0) - (mm - 1.0) * b, 2.0 * a - 1.0, -b};
}

} // namespace logvor
