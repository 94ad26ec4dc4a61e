#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace logvor {

/// Vertex or coordinate index list, 0-based.
using IndexSet = std::vector<int>;

/// Dense real symmetric matrix. Symmetry is enforced on construction by
/// averaging the input with its transpose, so exactly symmetric input is
/// stored unchanged.
class SymMat {
public:
    SymMat() = default;
    explicit SymMat(const Eigen::MatrixXd& m);

    static SymMat zeros(int m);
    static SymMat identity(int m);
    static SymMat diagonal(std::span<const double> d);

    [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
    [[nodiscard]] double operator()(int i, int j) const { return m_(i, j); }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const { return m_; }

    /// Sets entries (i,j) and (j,i).
    void set(int i, int j, double v);

    SymMat& operator+=(const SymMat& o);
    SymMat& operator-=(const SymMat& o);
    SymMat& operator*=(double s);

private:
    Eigen::MatrixXd m_;
};

SymMat operator+(SymMat a, const SymMat& b);
SymMat operator-(SymMat a, const SymMat& b);
SymMat operator*(double s, SymMat a);
SymMat operator*(SymMat a, double s);

/// tr(AB) for symmetric A, B.
double trace_inner(const SymMat& a, const SymMat& b);
double max_abs_diff(const SymMat& a, const SymMat& b);

/// Cholesky-style test: fails on any pivot <= 1e-12 * max diagonal entry.
bool is_positive_definite(const SymMat& m);

/// Inverse of a positive definite matrix; throws NotPD otherwise.
SymMat inverse_pd(const SymMat& m);
double log_det_pd(const SymMat& m);
double min_eigenvalue(const SymMat& m);

/// Places `b` at (rows, cols) of an m x m zero matrix. The caller is
/// responsible for a symmetric placement; mirrored entries must agree.
SymMat embed(const Eigen::MatrixXd& b, const IndexSet& rows, const IndexSet& cols, int m);
SymMat embed(const SymMat& b, const IndexSet& idx, int m);

SymMat principal_submatrix(const SymMat& m, const IndexSet& idx);
Eigen::MatrixXd submatrix(const SymMat& m, const IndexSet& rows, const IndexSet& cols);

/// E_ii for i == j, E_ij + E_ji otherwise.
SymMat unit_sym(int m, int i, int j);

} // namespace logvor
