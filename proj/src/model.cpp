#include "logvor/model.hpp"

#include "logvor/error.hpp"

#include <cmath>
#include <string>

namespace logvor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(const Model& model, const SymMat& sigma) {
    if (sigma.dim() != model_matrix_dim(model)) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix of size " + std::to_string(sigma.dim()) + " for a model on " +
                        std::to_string(model_matrix_dim(model)) + " variables");
    }
}

void require_dag_labels(const Digraph& dag) {
    if (!dag.is_acyclic()) throw Error(ErrorKind::CycleDetected, "directed graph has a cycle");
    topological_order(dag);
}

/// For every unordered pair (i <= j), the simple treks between them.
std::vector<std::vector<std::vector<Trek>>> all_treks(const Digraph& dag) {
    const int m = dag.size();
    std::vector<std::vector<std::vector<Trek>>> t(m, std::vector<std::vector<Trek>>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) t[i][j] = list_treks(dag, i, j);
    return t;
}

double lambda_product(const Digraph& dag, const DagParams& p, const Trek& t, int skip_arc = -1) {
    double v = 1.0;
    for (const auto* side : {&t.up, &t.down}) {
        for (const auto& [k, l] : *side) {
            const int idx = dag.arc_index(k, l);
            if (idx != skip_arc) v *= p.lambda[idx];
        }
    }
    return v;
}

double trek_monomial(const Digraph& dag, const DagParams& p, const Trek& t) {
    return p.a[t.top] * lambda_product(dag, p, t);
}

bool trek_uses_arc(const Digraph& dag, const Trek& t, int arc) {
    for (const auto* side : {&t.up, &t.down})
        for (const auto& [k, l] : *side)
            if (dag.arc_index(k, l) == arc) return true;
    return false;
}

} // namespace

std::string_view model_kind(const Model& model) {
    return std::visit(overloaded{
                          [](const LinearConcentration&) { return "linear_concentration"; },
                          [](const UndirectedGraph&) { return "undirected_graph"; },
                          [](const Dag&) { return "dag"; },
                          [](const BivariateCorrelation&) { return "bivariate_correlation"; },
                          [](const Equicorrelation&) { return "equicorrelation"; },
                          [](const UnrestrictedCorrelation&) { return "unrestricted_correlation"; },
                          [](const CiUnion&) { return "ci_union"; },
                      },
                      model);
}

int model_matrix_dim(const Model& model) {
    return std::visit(overloaded{
                          [](const LinearConcentration& lc) {
                              return lc.basis.empty() ? 0 : lc.basis.front().dim();
                          },
                          [](const UndirectedGraph& g) { return g.graph.size(); },
                          [](const Dag& d) { return d.dag.size(); },
                          [](const BivariateCorrelation&) { return 2; },
                          [](const Equicorrelation& e) { return e.m; },
                          [](const UnrestrictedCorrelation& u) { return u.m; },
                          [](const CiUnion&) { return 3; },
                      },
                      model);
}

int model_dimension(const Model& model) {
    return std::visit(overloaded{
                          [](const LinearConcentration& lc) { return static_cast<int>(lc.basis.size()); },
                          [](const UndirectedGraph& g) {
                              return g.graph.size() + static_cast<int>(g.graph.edges().size());
                          },
                          [](const Dag& d) { return d.dag.size() + static_cast<int>(d.dag.arcs().size()); },
                          [](const BivariateCorrelation&) { return 1; },
                          [](const Equicorrelation&) { return 1; },
                          [](const UnrestrictedCorrelation& u) { return u.m * (u.m - 1) / 2; },
                          [](const CiUnion&) { return 4; },
                      },
                      model);
}

bool has_unique_critical_point(const Model& model) {
    return std::holds_alternative<LinearConcentration>(model) ||
           std::holds_alternative<UndirectedGraph>(model) || std::holds_alternative<Dag>(model);
}

std::vector<SymMat> graph_concentration_basis(const Graph& g) {
    std::vector<SymMat> basis;
    for (int i = 0; i < g.size(); ++i) basis.push_back(unit_sym(g.size(), i, i));
    for (const auto& [i, j] : g.edges()) basis.push_back(unit_sym(g.size(), i, j));
    return basis;
}

void validate_model(const Model& model) {
    std::visit(overloaded{
                   [](const LinearConcentration& lc) {
                       if (lc.basis.empty()) throw Error(ErrorKind::OutOfRange, "empty concentration basis");
                       const int m = lc.basis.front().dim();
                       const int d = static_cast<int>(lc.basis.size());
                       Eigen::MatrixXd gram(d, d);
                       for (int a = 0; a < d; ++a) {
                           if (lc.basis[a].dim() != m)
                               throw Error(ErrorKind::DimensionMismatch, "basis matrices differ in size");
                           for (int b = 0; b < d; ++b) gram(a, b) = trace_inner(lc.basis[a], lc.basis[b]);
                       }
                       Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
                       lu.setThreshold(1e-12);
                       if (lu.rank() != d)
                           throw Error(ErrorKind::OutOfRange, "concentration basis is linearly dependent");
                   },
                   [](const UndirectedGraph&) {},
                   [](const Dag& d) { require_dag_labels(d.dag); },
                   [](const BivariateCorrelation&) {},
                   [](const Equicorrelation& e) {
                       if (e.m < 2) throw Error(ErrorKind::OutOfRange, "equicorrelation needs m >= 2");
                   },
                   [](const UnrestrictedCorrelation& u) {
                       if (u.m < 2) throw Error(ErrorKind::OutOfRange, "correlation model needs m >= 2");
                   },
                   [](const CiUnion&) {},
               },
               model);
}

SymMat trek_covariance(const Digraph& dag, const DagParams& params) {
    require_dag_labels(dag);
    const int m = dag.size();
    if (static_cast<int>(params.a.size()) != m || params.lambda.size() != dag.arcs().size()) {
        throw Error(ErrorKind::ShapeMismatch, "DAG parameters do not match the graph");
    }
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        sigma(i, i) = params.a[i];
        for (int j = i + 1; j < m; ++j) {
            double v = 0.0;
            for (const Trek& t : list_treks(dag, i, j)) v += trek_monomial(dag, params, t);
            sigma(i, j) = sigma(j, i) = v;
        }
    }
    return SymMat(sigma);
}

SymMat sem_covariance(const Digraph& dag, const SemParams& params) {
    const int m = dag.size();
    if (params.omega.size() != m || params.lambda.rows() != m || params.lambda.cols() != m) {
        throw Error(ErrorKind::ShapeMismatch, "SEM parameters do not match the graph");
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (params.lambda(i, j) != 0.0 && (i >= j || dag.arc_index(i, j) < 0)) {
                throw Error(ErrorKind::ShapeMismatch, "Lambda must be strictly upper triangular on arcs");
            }
        }
    }
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
    // (I - Lambda) is unit upper triangular.
    const Eigen::MatrixXd inv =
        (id - params.lambda).triangularView<Eigen::UnitUpper>().solve(id);
    return SymMat(inv.transpose() * params.omega.asDiagonal() * inv);
}

SemParams dag_params_to_sem(const Digraph& dag, const DagParams& params) {
    const SymMat sigma = trek_covariance(dag, params);
    const int m = dag.size();
    SemParams sem{Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
    for (std::size_t e = 0; e < dag.arcs().size(); ++e) {
        const auto& [i, j] = dag.arcs()[e];
        sem.lambda(i, j) = params.lambda[e];
    }
    for (int j = 0; j < m; ++j) {
        const IndexSet& pa = dag.parents(j);
        double omega = params.a[j];
        if (!pa.empty()) {
            const Eigen::MatrixXd spp = submatrix(sigma, pa, pa);
            const Eigen::MatrixXd spj = submatrix(sigma, pa, {j});
            omega -= (spj.transpose() * spp.ldlt().solve(spj))(0, 0);
        }
        if (!(omega > 0.0)) {
            throw Error(ErrorKind::OutOfRange,
                        "variance a_" + std::to_string(j + 1) + " too small for a PD covariance");
        }
        sem.omega(j) = omega;
    }
    return sem;
}

DagParams dag_params_from_sigma(const Digraph& dag, const SymMat& sigma) {
    const int m = dag.size();
    DagParams p{std::vector<double>(m), std::vector<double>(dag.arcs().size(), 0.0)};
    for (int j = 0; j < m; ++j) {
        p.a[j] = sigma(j, j);
        const IndexSet& pa = dag.parents(j);
        if (pa.empty()) continue;
        const Eigen::MatrixXd spp = submatrix(sigma, pa, pa);
        const Eigen::VectorXd beta = spp.llt().solve(submatrix(sigma, pa, {j}));
        for (std::size_t k = 0; k < pa.size(); ++k) p.lambda[dag.arc_index(pa[k], j)] = beta(k);
    }
    return p;
}

SymMat equicorrelation_matrix(int m, double x) {
    if (m < 2) throw Error(ErrorKind::OutOfRange, "equicorrelation needs m >= 2");
    const double lo = -1.0 / (m - 1);
    if (!(x > lo && x < 1.0)) {
        throw Error(ErrorKind::OutOfRange, "equicorrelation parameter outside (-1/(m-1), 1)");
    }
    Eigen::MatrixXd s = Eigen::MatrixXd::Constant(m, m, x);
    s.diagonal().setOnes();
    return SymMat(s);
}

int ci_union_component(const SymMat& sigma) {
    const double tol = 1e-12 * sigma.matrix().diagonal().cwiseAbs().maxCoeff();
    const bool has12 = std::abs(sigma(0, 1)) > tol;
    const bool has23 = std::abs(sigma(1, 2)) > tol;
    if (std::abs(sigma(0, 2)) > tol || (has12 && has23)) {
        throw Error(ErrorKind::OutOfRange, "matrix is not in the CI union model");
    }
    if (has23) return 1;
    if (has12) return 2;
    return 0;
}

bool model_contains(const Model& model, const SymMat& sigma, double tol) {
    require_dim(model, sigma);
    if (!is_positive_definite(sigma)) return false;
    const int m = sigma.dim();
    auto unit_diagonal = [&] {
        for (int i = 0; i < m; ++i)
            if (std::abs(sigma(i, i) - 1.0) > tol) return false;
        return true;
    };
    return std::visit(
        overloaded{
            [&](const LinearConcentration& lc) {
                const SymMat k = inverse_pd(sigma);
                const int d = static_cast<int>(lc.basis.size());
                Eigen::MatrixXd gram(d, d);
                Eigen::VectorXd rhs(d);
                for (int a = 0; a < d; ++a) {
                    rhs(a) = trace_inner(lc.basis[a], k);
                    for (int b = 0; b < d; ++b) gram(a, b) = trace_inner(lc.basis[a], lc.basis[b]);
                }
                const Eigen::VectorXd coef = gram.ldlt().solve(rhs);
                Eigen::MatrixXd resid = k.matrix();
                for (int a = 0; a < d; ++a) resid -= coef(a) * lc.basis[a].matrix();
                return resid.norm() <= tol * std::max(1.0, k.matrix().norm());
            },
            [&](const UndirectedGraph& ug) {
                const SymMat k = inverse_pd(sigma);
                const double scale = std::max(1.0, k.matrix().diagonal().maxCoeff());
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        if (!ug.graph.adjacent(i, j) && std::abs(k(i, j)) > tol * scale) return false;
                return true;
            },
            [&](const Dag& d) {
                require_dag_labels(d.dag);
                // Regressing X_j on all predecessors must give zero weight to non-parents.
                for (int j = 1; j < m; ++j) {
                    IndexSet pred(j);
                    for (int k = 0; k < j; ++k) pred[k] = k;
                    const Eigen::VectorXd beta =
                        submatrix(sigma, pred, pred).llt().solve(submatrix(sigma, pred, {j}));
                    const double scale =
                        std::max(1.0, std::sqrt(sigma(j, j) / sigma.matrix().diagonal().minCoeff()));
                    for (int k = 0; k < j; ++k)
                        if (d.dag.arc_index(k, j) < 0 && std::abs(beta(k)) > tol * scale) return false;
                }
                return true;
            },
            [&](const BivariateCorrelation&) { return unit_diagonal(); },
            [&](const Equicorrelation&) {
                if (!unit_diagonal()) return false;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        if (std::abs(sigma(i, j) - sigma(0, 1)) > tol) return false;
                return true;
            },
            [&](const UnrestrictedCorrelation&) { return unit_diagonal(); },
            [&](const CiUnion&) {
                return std::abs(sigma(0, 2)) <= tol &&
                       (std::abs(sigma(0, 1)) <= tol || std::abs(sigma(1, 2)) <= tol);
            },
        },
        model);
}

std::vector<SymMat> tangent_basis(const Model& model, const SymMat& sigma) {
    require_dim(model, sigma);
    if (!is_positive_definite(sigma)) throw Error(ErrorKind::NotPD, "tangent space needs a PD point");
    const int m = sigma.dim();
    auto pushforward = [&](const std::vector<SymMat>& conc) {
        // Sigma = K^{-1}, so dSigma = -Sigma dK Sigma.
        std::vector<SymMat> out;
        for (const SymMat& k : conc) out.emplace_back(-(sigma.matrix() * k.matrix() * sigma.matrix()));
        return out;
    };
    return std::visit(
        overloaded{
            [&](const LinearConcentration& lc) { return pushforward(lc.basis); },
            [&](const UndirectedGraph& ug) { return pushforward(graph_concentration_basis(ug.graph)); },
            [&](const Dag& d) {
                require_dag_labels(d.dag);
                const DagParams p = dag_params_from_sigma(d.dag, sigma);
                const auto treks = all_treks(d.dag);
                std::vector<SymMat> out;
                // d/da_v: lambda-monomials of the treks topped at v.
                for (int v = 0; v < m; ++v) {
                    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
                    for (int i = 0; i < m; ++i)
                        for (int j = i; j < m; ++j)
                            for (const Trek& tr : treks[i][j])
                                if (tr.top == v) {
                                    const double coef = lambda_product(d.dag, p, tr);
                                    t(i, j) += coef;
                                    if (i != j) t(j, i) += coef;
                                }
                    out.emplace_back(t);
                }
                // d/dlambda_e: treks are simple, so each arc appears at most once.
                for (std::size_t e = 0; e < d.dag.arcs().size(); ++e) {
                    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
                    for (int i = 0; i < m; ++i)
                        for (int j = i + 1; j < m; ++j)
                            for (const Trek& tr : treks[i][j])
                                if (trek_uses_arc(d.dag, tr, static_cast<int>(e))) {
                                    const double coef =
                                        p.a[tr.top] * lambda_product(d.dag, p, tr, static_cast<int>(e));
                                    t(i, j) += coef;
                                    t(j, i) += coef;
                                }
                    out.emplace_back(t);
                }
                return out;
            },
            [&](const BivariateCorrelation&) { return std::vector<SymMat>{unit_sym(2, 0, 1)}; },
            [&](const Equicorrelation&) {
                Eigen::MatrixXd t = Eigen::MatrixXd::Ones(m, m);
                t.diagonal().setZero();
                return std::vector<SymMat>{SymMat(t)};
            },
            [&](const UnrestrictedCorrelation&) {
                std::vector<SymMat> out;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) out.push_back(unit_sym(m, i, j));
                return out;
            },
            [&](const CiUnion&) {
                const int comp = ci_union_component(sigma);
                if (comp == 0) {
                    throw Error(ErrorKind::SingularPoint, "diagonal point lies on both CI components");
                }
                std::vector<SymMat> out{unit_sym(3, 0, 0), unit_sym(3, 1, 1), unit_sym(3, 2, 2)};
                out.push_back(comp == 1 ? unit_sym(3, 1, 2) : unit_sym(3, 0, 1));
                return out;
            },
        },
        model);
}

} // namespace logvor
