#include "logvor/sym_mat.hpp"

#include "logvor/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace logvor {

SymMat::SymMat(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "symmetric matrix must be square");
    }
    if (!m.allFinite()) {
        throw Error(ErrorKind::OutOfRange, "matrix entries must be finite");
    }
    m_ = 0.5 * (m + m.transpose());
}

SymMat SymMat::zeros(int m) { return SymMat(Eigen::MatrixXd::Zero(m, m)); }

SymMat SymMat::identity(int m) { return SymMat(Eigen::MatrixXd::Identity(m, m)); }

SymMat SymMat::diagonal(std::span<const double> d) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d.size()),
                                              static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return SymMat(m);
}

void SymMat::set(int i, int j, double v) {
    if (!std::isfinite(v)) throw Error(ErrorKind::OutOfRange, "matrix entries must be finite");
    m_(i, j) = v;
    m_(j, i) = v;
}

SymMat& SymMat::operator+=(const SymMat& o) {
    if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "matrix sum");
    m_ += o.m_;
    return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) {
    if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "matrix difference");
    m_ -= o.m_;
    return *this;
}

SymMat& SymMat::operator*=(double s) {
    m_ *= s;
    return *this;
}

SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
SymMat operator*(double s, SymMat a) { return a *= s; }
SymMat operator*(SymMat a, double s) { return a *= s; }

double trace_inner(const SymMat& a, const SymMat& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "trace inner product");
    return a.matrix().cwiseProduct(b.matrix()).sum();
}

double max_abs_diff(const SymMat& a, const SymMat& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix comparison");
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

bool is_positive_definite(const SymMat& m) {
    const int n = m.dim();
    if (n == 0) return false;
    const Eigen::MatrixXd& a = m.matrix();
    const double scale = a.diagonal().maxCoeff();
    if (!(scale > 0.0)) return false;
    const double threshold = 1e-12 * scale;

    // Plain Cholesky; a pivot at or below threshold means not (strictly) PD.
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double pivot = a(j, j);
        for (int k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > threshold)) return false;
        const double d = std::sqrt(pivot);
        l(j, j) = d;
        for (int i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / d;
        }
    }
    return true;
}

SymMat inverse_pd(const SymMat& m) {
    if (!is_positive_definite(m)) throw Error(ErrorKind::NotPD, "cannot invert a non-PD matrix");
    Eigen::LLT<Eigen::MatrixXd> llt(m.matrix());
    return SymMat(llt.solve(Eigen::MatrixXd::Identity(m.dim(), m.dim())));
}

double log_det_pd(const SymMat& m) {
    if (!is_positive_definite(m)) throw Error(ErrorKind::NotPD, "log det of a non-PD matrix");
    Eigen::LLT<Eigen::MatrixXd> llt(m.matrix());
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double min_eigenvalue(const SymMat& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

namespace {

void check_indices(const IndexSet& idx, int m) {
    for (int i : idx) {
        if (i < 0 || i >= m) {
            throw Error(ErrorKind::IndexOutOfRange,
                        "index " + std::to_string(i) + " outside 0.." + std::to_string(m - 1));
        }
    }
}

} // namespace

SymMat embed(const Eigen::MatrixXd& b, const IndexSet& rows, const IndexSet& cols, int m) {
    if (b.rows() != static_cast<Eigen::Index>(rows.size()) ||
        b.cols() != static_cast<Eigen::Index>(cols.size())) {
        throw Error(ErrorKind::ShapeMismatch, "block shape does not match index sets");
    }
    check_indices(rows, m);
    check_indices(cols, m);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out(rows[r], cols[c]) = b(r, c);
            out(cols[c], rows[r]) = b(r, c);
        }
    }
    return SymMat(out);
}

SymMat embed(const SymMat& b, const IndexSet& idx, int m) { return embed(b.matrix(), idx, idx, m); }

Eigen::MatrixXd submatrix(const SymMat& m, const IndexSet& rows, const IndexSet& cols) {
    check_indices(rows, m.dim());
    check_indices(cols, m.dim());
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
    }
    return out;
}

SymMat principal_submatrix(const SymMat& m, const IndexSet& idx) {
    return SymMat(submatrix(m, idx, idx));
}

SymMat unit_sym(int m, int i, int j) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
    e(i, j) = 1.0;
    e(j, i) = 1.0;
    return SymMat(e);
}

} // namespace logvor
