#pragma once

// Reference computations used by the tests. Each one is written from first
// principles and shares no code with the library beyond the SymMat type.

#include "logvor/sym_mat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline Eigen::MatrixXd random_pd(int m, std::mt19937_64& rng, double ridge = 0.1) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = n(rng);
    return a * a.transpose() / m + ridge * Eigen::MatrixXd::Identity(m, m);
}

inline bool pd_by_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return es.eigenvalues().minCoeff() > 0.0;
}

/// -log det(sigma) - tr(s sigma^{-1}) via eigen-decomposition.
inline double loglik(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    const Eigen::VectorXd ev = es.eigenvalues();
    const Eigen::MatrixXd inv = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    return -ev.array().log().sum() - (s * inv).trace();
}

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 by the trigonometric / Cardano
/// formulas, each refined by a few Newton steps.
inline std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0) {
    const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::vector<double> t;
    if (disc < 0.0) {
        const double r = std::sqrt(-p / 3.0);
        const double phi = std::acos(std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0));
        for (int k = 0; k < 3; ++k) t.push_back(2.0 * r * std::cos((phi - 2.0 * M_PI * k) / 3.0));
    } else {
        const double sq = std::sqrt(disc);
        t.push_back(std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq));
    }
    std::vector<double> roots;
    for (double ti : t) {
        double x = ti - b / 3.0;
        for (int it = 0; it < 4; ++it) {
            const double f = ((x + b) * x + c) * x + d;
            const double df = (3.0 * x + 2.0 * b) * x + c;
            if (df == 0.0) break;
            x -= f / df;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Number of distinct real roots of the monic cubic x^3 + b2 x^2 + b1 x + b0,
/// from the sign of the cubic at the critical points of its derivative.
inline int distinct_real_root_count(double b2, double b1, double b0) {
    const double disc = 4.0 * b2 * b2 - 12.0 * b1;
    if (disc <= 0.0) return 1;
    const double r = std::sqrt(disc);
    const double x1 = (-2.0 * b2 - r) / 6.0, x2 = (-2.0 * b2 + r) / 6.0;
    auto f = [&](double x) { return ((x + b2) * x + b1) * x + b0; };
    const double prod = f(x1) * f(x2);
    return prod < 0.0 ? 3 : (prod == 0.0 ? 2 : 1);
}

/// Average of P S P^T over all m! permutation matrices.
inline Eigen::MatrixXd permutation_average(const Eigen::MatrixXd& s) {
    const int m = static_cast<int>(s.rows());
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
    long count = 0;
    do {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) sum(i, j) += s(perm[i], perm[j]);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum / static_cast<double>(count);
}

/// (I - L)^{-T} diag(omega) (I - L)^{-1} for an upper triangular L.
inline Eigen::MatrixXd sem_cov(const Eigen::VectorXd& omega, const Eigen::MatrixXd& lambda) {
    const int m = static_cast<int>(omega.size());
    const Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(m, m) - lambda).inverse();
    return inv.transpose() * omega.asDiagonal() * inv;
}

/// Directional derivative of loglik along d by central differences.
inline double fd_directional(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& s, const Eigen::MatrixXd& d,
                             double h = 1e-5) {
    return (loglik(sigma + h * d, s) - loglik(sigma - h * d, s)) / (2.0 * h);
}

} // namespace oracle
