#include "logvor/figures.hpp"

#include "logvor/cells.hpp"
#include "logvor/error.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace logvor {

namespace {

SymMat sym3(double s11, double s12, double s13, double s22, double s23, double s33) {
    Eigen::Matrix3d a;
    a << s11, s12, s13, s12, s22, s23, s13, s23, s33;
    return SymMat(a);
}

struct Axis {
    std::string name;
    double lo;
    double hi;
};

using SliceMap = std::function<SymMat(const std::vector<double>&)>;

FigureGrid sweep(const Model& model, const SymMat& sigma, const std::vector<Axis>& axes, int n,
                 const SliceMap& point) {
    FigureGrid fig;
    for (const Axis& a : axes) fig.columns.push_back(a.name);
    fig.columns.push_back("in_spectrahedron");
    fig.columns.push_back("in_cell");

    const int d = static_cast<int>(axes.size());
    std::vector<int> idx(d, 0);
    std::vector<double> coord(d);
    for (;;) {
        for (int k = 0; k < d; ++k) {
            coord[k] = n == 1 ? axes[k].lo : axes[k].lo + (axes[k].hi - axes[k].lo) * idx[k] / (n - 1);
        }
        const MembershipVerdict v = cell_membership(model, sigma, point(coord));
        const bool inside = v.status == CellStatus::InCell || v.status == CellStatus::InSpectrahedronNotCell;
        std::vector<double> row = coord;
        row.push_back(inside ? 1.0 : 0.0);
        row.push_back(v.status == CellStatus::InCell ? 1.0 : 0.0);
        fig.rows.push_back(std::move(row));

        // Last axis varies fastest.
        int k = d - 1;
        while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
        if (k < 0) break;
    }
    return fig;
}

FigureGrid ci_union_t(int n) {
    const double t1 = 1, t2 = 2, t3 = 1, t4 = 3;
    return sweep(CiUnion{}, sym3(t1, 0, 0, t2, t3, t4), {{"x1", -2, 2}, {"x2", -2, 2}}, n,
                 [&](const std::vector<double>& c) { return sym3(t1, c[0], c[1], t2, t3, t4); });
}

FigureGrid ci_union_s(int n) {
    const double s1 = 2, s2 = 1, s3 = 3, s4 = 4;
    return sweep(CiUnion{}, sym3(s1, s2, 0, s3, 0, s4), {{"y1", -3, 3}, {"y2", -3, 3}}, n,
                 [&](const std::vector<double>& c) { return sym3(s1, s2, c[0], s3, c[1], s4); });
}

FigureGrid bivariate(int n) {
    // Slice through Sigma_c: S12 = b and S11 + S22 = 2a(b); k = S11.
    const double c = 0.5;
    Eigen::Matrix2d sigma;
    sigma << 1, c, c, 1;
    return sweep(BivariateCorrelation{}, SymMat(sigma), {{"b", -1, 2}, {"k", 0, 4}}, n,
                 [&](const std::vector<double>& v) {
                     const double b = v[0], k = v[1];
                     const double a = (b * c * c - c * c * c + b + c) / (2 * c);
                     Eigen::Matrix2d s;
                     s << k, b, b, 2 * a - k;
                     return SymMat(s);
                 });
}

FigureGrid dag_slice(int n) {
    const Digraph dag(4, {{0, 1}, {1, 3}, {2, 3}});
    const double a1 = 1, a2 = 2, a3 = 3, a4 = 4, l12 = 0.5, l24 = 1, l34 = 0.5;
    const SymMat sigma = trek_covariance(dag, DagParams{{a1, a2, a3, a4}, {l12, l24, l34}});
    return sweep(Dag{dag}, sigma, {{"x", -2.5, 2.5}, {"y", -2.5, 2.5}, {"z", -2.5, 2.5}}, n,
                 [&](const std::vector<double>& v) {
                     const double x = v[0], y = v[1], z = v[2];
                     Eigen::Matrix4d s;
                     s << a1, a1 * l12, x, y,
                          a1 * l12, a2, z, a2 * l24 + l34 * z,
                          x, z, a3, a3 * l34 + l24 * z,
                          y, a2 * l24 + l34 * z, a3 * l34 + l24 * z, 2 * l24 * l34 * z + a4;
                     return SymMat(s);
                 });
}

FigureGrid path_spectrahedron(int n) {
    Eigen::Matrix4d base;
    base << 6, 1, 1.0 / 7, 1.0 / 28,
            1, 7, 1, 0.25,
            1.0 / 7, 1, 8, 2,
            1.0 / 28, 0.25, 2, 9;
    return sweep(UndirectedGraph{Graph::path(4)}, SymMat(base), {{"x", -8, 8}, {"y", -8, 8}, {"z", -8, 8}}, n,
                 [&](const std::vector<double>& v) {
                     Eigen::Matrix4d s = base;
                     s(0, 2) = s(2, 0) = v[0];
                     s(0, 3) = s(3, 0) = v[1];
                     s(1, 3) = s(3, 1) = v[2];
                     return SymMat(s);
                 });
}

} // namespace

std::vector<std::string> figure_names() {
    return {"ci-union-t", "ci-union-s", "bivariate", "dag-slice", "path-spectrahedron"};
}

int default_grid(std::string_view name) {
    return name == "dag-slice" || name == "path-spectrahedron" ? 41 : 201;
}

FigureGrid figure_grid(std::string_view name, int grid) {
    const int n = grid > 0 ? grid : default_grid(name);
    if (name == "ci-union-t") return ci_union_t(n);
    if (name == "ci-union-s") return ci_union_s(n);
    if (name == "bivariate") return bivariate(n);
    if (name == "dag-slice") return dag_slice(n);
    if (name == "path-spectrahedron") return path_spectrahedron(n);
    throw Error(ErrorKind::UnknownFigure, "unknown figure \"" + std::string(name) + "\"");
}

void write_csv(const FigureGrid& fig, std::ostream& out) {
    for (std::size_t k = 0; k < fig.columns.size(); ++k) out << (k ? "," : "") << fig.columns[k];
    out << '\n';
    for (const auto& row : fig.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g", row[k]);
            out << (k ? "," : "") << buf;
        }
        out << '\n';
    }
}

} // namespace logvor
