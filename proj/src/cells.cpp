#include "logvor/cells.hpp"

#include "logvor/cubic.hpp"
#include "logvor/error.hpp"
#include "logvor/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace logvor {

std::string_view cell_status_name(CellStatus s) {
    switch (s) {
        case CellStatus::InCell: return "InCell";
        case CellStatus::InSpectrahedronNotCell: return "InSpectrahedronNotCell";
        case CellStatus::NotInSpectrahedron: return "NotInSpectrahedron";
        case CellStatus::NotPD: return "NotPD";
    }
    return "Unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Frobenius-orthonormal basis of Sym(R^m): E_ii, then (E_ij + E_ji)/sqrt(2).
std::vector<std::pair<int, int>> sym_coordinates(int m) {
    std::vector<std::pair<int, int>> c;
    for (int i = 0; i < m; ++i) c.emplace_back(i, i);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) c.emplace_back(i, j);
    return c;
}

SymMat from_coordinates(const std::vector<std::pair<int, int>>& coords, const Eigen::VectorXd& v, int m) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t p = 0; p < coords.size(); ++p) {
        const auto [i, j] = coords[p];
        if (i == j) out(i, i) = v(p);
        else out(i, j) = out(j, i) = v(p) / std::sqrt(2.0);
    }
    return SymMat(out);
}

void require_same_dim(const Model& model, const SymMat& sigma, const SymMat& s) {
    const int m = model_matrix_dim(model);
    if (sigma.dim() != m || s.dim() != m) {
        throw Error(ErrorKind::DimensionMismatch, "matrices do not match the model size");
    }
}

/// Log-normal spectrahedron at a diagonal point of CiUnion: S keeps the
/// diagonal and both of the matrices obtained by zeroing S23, resp. S12, are PD.
bool ci_union_singular_slice(const SymMat& sigma, const SymMat& s, double tol) {
    const double scale = sigma.matrix().diagonal().maxCoeff();
    for (int i = 0; i < 3; ++i)
        if (std::abs(s(i, i) - sigma(i, i)) > tol * scale) return false;
    SymMat first = s, second = s;
    first.set(1, 2, 0.0);
    second.set(0, 1, 0.0);
    return is_positive_definite(first) && is_positive_definite(second);
}

double slice_scale(const SymMat& s) { return 1.0 + s.matrix().cwiseAbs().maxCoeff(); }

} // namespace

AffineSlice lognormal_basis(const Model& model, const SymMat& sigma) {
    const std::vector<SymMat> tangents = tangent_basis(model, sigma);
    const int m = sigma.dim();
    const SymMat k = inverse_pd(sigma);
    const auto coords = sym_coordinates(m);
    const int n = static_cast<int>(coords.size());

    // Row r: coordinates of K T_r K, since <K D K, T> = <D, K T K>.
    Eigen::MatrixXd a(static_cast<Eigen::Index>(tangents.size()), n);
    for (std::size_t r = 0; r < tangents.size(); ++r) {
        const Eigen::MatrixXd ktk = k.matrix() * tangents[r].matrix() * k.matrix();
        const double norm = tangents[r].matrix().norm();
        for (int p = 0; p < n; ++p) {
            const auto [i, j] = coords[p];
            a(r, p) = (i == j ? ktk(i, i) : std::sqrt(2.0) * ktk(i, j)) / norm;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::FullPivHouseholderQRPreconditioner | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int p = 0; p < sv.size(); ++p)
        if (sv(p) > 1e-10 * sv(0)) ++rank;
    if (rank < model_dimension(model)) {
        throw Error(ErrorKind::SingularPoint, "tangent space at this point has deficient rank");
    }
    AffineSlice slice{sigma, {}};
    for (int p = rank; p < n; ++p) slice.directions.push_back(from_coordinates(coords, svd.matrixV().col(p), m));
    return slice;
}

bool in_spectrahedron(const Model& model, const SymMat& sigma, const SymMat& s, double tol) {
    require_same_dim(model, sigma, s);
    if (!is_positive_definite(s)) return false;
    if (std::holds_alternative<CiUnion>(model) && ci_union_component(sigma) == 0) {
        return ci_union_singular_slice(sigma, s, tol);
    }
    return criticality_residual(model, sigma, s) < tol;
}

MembershipVerdict cell_membership(const Model& model, const SymMat& sigma, const SymMat& s,
                                  const MembershipOptions& opts) {
    require_same_dim(model, sigma, s);
    MembershipVerdict v;
    v.margin = std::numeric_limits<double>::quiet_NaN();
    if (!is_positive_definite(s)) {
        v.status = CellStatus::NotPD;
        return v;
    }
    if (!in_spectrahedron(model, sigma, s, opts.slice_tol)) {
        v.status = CellStatus::NotInSpectrahedron;
        return v;
    }
    const bool singular_ci = std::holds_alternative<CiUnion>(model) && ci_union_component(sigma) == 0;
    if (has_unique_critical_point(model) || singular_ci) {
        v.status = CellStatus::InCell;
        v.margin = kInf;
        return v;
    }

    const double own = log_likelihood(sigma, s);
    const auto points = critical_points(model, s, opts.solver);
    v.best_effort = std::holds_alternative<UnrestrictedCorrelation>(model);
    v.margin = kInf;
    for (const CriticalPoint& p : points) {
        if (max_abs_diff(p.sigma, sigma) < 1e-6) continue;
        // points are sorted, so the first competitor is the best one.
        v.margin = own - p.loglik;
        if (p.loglik > own + kTieBand) v.witness = p;
        break;
    }
    v.status = v.witness ? CellStatus::InSpectrahedronNotCell : CellStatus::InCell;
    return v;
}

bool bivariate_cell(double c, const SymMat& s) {
    if (!(c > -1.0 && c < 1.0)) throw Error(ErrorKind::OutOfRange, "c must lie in (-1, 1)");
    if (s.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "bivariate sample must be 2x2");
    const double a = 0.5 * (s(0, 0) + s(1, 1));
    const double b = s(0, 1);
    const double fc = eval_cubic(bivariate_cubic({a, b}), c);
    if (std::abs(fc) > kSliceTol * slice_scale(s)) {
        throw Error(ErrorKind::NotOnSlice, "Sigma_c is not a critical point for this sample");
    }
    if (!is_positive_definite(s)) return false;
    if (c > 0.0) return b >= 0.0;
    if (c < 0.0) return b <= 0.0;
    return a >= 0.5;
}

bool ci_union_cell(const SymMat& sigma, const SymMat& s) {
    if (sigma.dim() != 3 || s.dim() != 3) throw Error(ErrorKind::DimensionMismatch, "CI union is 3x3");
    const int comp = ci_union_component(sigma);
    if (comp == 0) throw Error(ErrorKind::SingularPoint, "point lies on both components");
    const double tol = kSliceTol * slice_scale(sigma);
    auto matches = [&](int i, int j) { return std::abs(s(i, j) - sigma(i, j)) <= tol; };
    if (comp == 1) {
        // t-chart: (t1, t2, t3, t4) = (s11, s22, s23, s33); x1 = S12 is bounded.
        if (!(matches(0, 0) && matches(1, 1) && matches(1, 2) && matches(2, 2))) {
            throw Error(ErrorKind::NotOnSlice, "sample is not on the log-normal ellipse");
        }
        if (!is_positive_definite(s)) return false;
        const double t1 = sigma(0, 0), t3 = sigma(1, 2), t4 = sigma(2, 2);
        return s(0, 1) * s(0, 1) <= t3 * t3 * t1 / t4;
    }
    // s-chart: (s1, s2, s3, s4) = (s11, s12, s22, s33); y2 = S23 is bounded.
    if (!(matches(0, 0) && matches(0, 1) && matches(1, 1) && matches(2, 2))) {
        throw Error(ErrorKind::NotOnSlice, "sample is not on the log-normal ellipse");
    }
    if (!is_positive_definite(s)) return false;
    const double s1 = sigma(0, 0), s2 = sigma(0, 1), s4 = sigma(2, 2);
    return s(1, 2) * s(1, 2) <= s2 * s2 * s4 / s1;
}

Symmetrized symmetrize(const SymMat& s) {
    const int m = s.dim();
    Symmetrized out;
    out.a = s.matrix().diagonal().mean();
    if (m > 1) out.b = (s.matrix().sum() - s.matrix().trace()) / (static_cast<double>(m) * (m - 1));
    Eigen::MatrixXd sbar = Eigen::MatrixXd::Constant(m, m, out.b);
    sbar.diagonal().setConstant(out.a);
    out.sbar = SymMat(sbar);
    return out;
}

bool equicorrelation_cell(int m, double c, const SymMat& s) {
    const SymMat sigma_c = equicorrelation_matrix(m, c);
    if (s.dim() != m) throw Error(ErrorKind::DimensionMismatch, "sample size does not match m");
    const Symmetrized sym = symmetrize(s);
    const auto coef = equicorrelation_cubic(m, sym.a, sym.b);
    if (std::abs(eval_cubic(coef, c)) > kSliceTol * (m - 1) * slice_scale(sym.sbar)) {
        throw Error(ErrorKind::NotOnSlice, "Sigma_c is not a critical point for this sample");
    }
    if (!is_positive_definite(s)) return false;
    const double own = log_likelihood(sigma_c, sym.sbar);
    for (double r : cubic_roots_in_interval(coef[0], coef[1], coef[2], coef[3], -1.0 / (m - 1), 1.0)) {
        if (std::abs(r - c) < 1e-6) continue;
        if (log_likelihood(equicorrelation_matrix(m, r), sym.sbar) > own + kTieBand) return false;
    }
    return true;
}

namespace {

Decomposition require_decomposition(const Graph& g) {
    auto dec = find_reducible_decomposition(g);
    if (!dec) throw Error(ErrorKind::PreconditionFailed, "graph has no clique-separator decomposition");
    return *dec;
}

SymMat recombine(const Decomposition& dec, const SymMat& sigma, const SymMat& s1, const SymMat& s2) {
    const int m = sigma.dim();
    SymMat l = embed(inverse_pd(s1), dec.U, m) + embed(inverse_pd(s2), dec.W, m);
    if (!dec.T.empty()) l -= embed(inverse_pd(principal_submatrix(sigma, dec.T)), dec.T, m);
    if (!is_positive_definite(l)) throw Error(ErrorKind::NotPD, "recombined concentration is not PD");
    return inverse_pd(l);
}

bool blocks_vanish(const SymMat& m, const Decomposition& dec, double tol) {
    for (const IndexSet* block : {&dec.U, &dec.W})
        for (int i : *block)
            for (int j : *block)
                if (std::abs(m(i, j)) > tol) return false;
    return true;
}

} // namespace

SymMat compose_cell(const Graph& g, const SymMat& sigma, const SymMat& s1, const SymMat& s2,
                    const SymMat& m) {
    const Decomposition dec = require_decomposition(g);
    if (sigma.dim() != g.size() || m.dim() != g.size()) {
        throw Error(ErrorKind::DimensionMismatch, "matrices do not match the graph");
    }
    if (static_cast<std::size_t>(s1.dim()) != dec.U.size() || static_cast<std::size_t>(s2.dim()) != dec.W.size()) {
        throw Error(ErrorKind::PreconditionFailed, "block sizes do not match the decomposition");
    }
    const auto in_sub_cell = [&](const IndexSet& vs, const SymMat& block) {
        return cell_membership(UndirectedGraph{g.induced(vs)}, principal_submatrix(sigma, vs), block).status ==
               CellStatus::InCell;
    };
    if (!in_sub_cell(dec.U, s1)) throw Error(ErrorKind::PreconditionFailed, "S1 is not in the U-cell");
    if (!in_sub_cell(dec.W, s2)) throw Error(ErrorKind::PreconditionFailed, "S2 is not in the W-cell");
    if (!blocks_vanish(m, dec, 1e-12 * slice_scale(sigma))) {
        throw Error(ErrorKind::PreconditionFailed, "M must vanish on the U and W blocks");
    }
    SymMat s = recombine(dec, sigma, s1, s2) + m;
    if (!is_positive_definite(s)) throw Error(ErrorKind::NotPD, "composed matrix left the PD cone");
    return s;
}

CellProjection project_cell(const Graph& g, const SymMat& sigma, const SymMat& s) {
    if (cell_membership(UndirectedGraph{g}, sigma, s).status != CellStatus::InCell) {
        throw Error(ErrorKind::PreconditionFailed, "sample is not in the logarithmic Voronoi cell");
    }
    CellProjection out;
    out.decomposition = require_decomposition(g);
    const auto& dec = out.decomposition;
    out.s1 = principal_submatrix(s, dec.U);
    out.s2 = principal_submatrix(s, dec.W);
    Eigen::MatrixXd m = s.matrix() - recombine(dec, sigma, out.s1, out.s2).matrix();
    // Zero in exact arithmetic by the Schur complement identities.
    for (const IndexSet* block : {&dec.U, &dec.W})
        for (int i : *block)
            for (int j : *block) m(i, j) = 0.0;
    out.m = SymMat(m);
    return out;
}

std::vector<SymMat> sample_spectrahedron(const Model& model, const SymMat& sigma, int count,
                                         std::uint64_t seed, double radius) {
    if (count < 0) throw Error(ErrorKind::OutOfRange, "negative sample count");
    if (count == 0) return {};
    const AffineSlice slice = lognormal_basis(model, sigma);
    const double r0 = radius > 0.0 ? radius : 0.5 * min_eigenvalue(sigma);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<SymMat> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        double r = r0;
        for (;;) {
            Eigen::MatrixXd s = sigma.matrix();
            for (const SymMat& d : slice.directions) s += r * normal(rng) * d.matrix();
            SymMat candidate(s);
            if (is_positive_definite(candidate)) {
                out.push_back(std::move(candidate));
                break;
            }
            r *= 0.5;
            if (r < 1e-12 * r0) throw Error(ErrorKind::SamplingExhausted, "no PD proposal accepted");
        }
    }
    return out;
}

} // namespace logvor
