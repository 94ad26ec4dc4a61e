#include "logvor/mle.hpp"

#include "logvor/cubic.hpp"
#include "logvor/error.hpp"
#include "logvor/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>

namespace logvor {

std::string_view point_source_name(PointSource s) {
    switch (s) {
        case PointSource::Unique: return "unique";
        case PointSource::CubicRoot: return "cubic-root";
        case PointSource::Multistart: return "multistart";
        case PointSource::ClosedForm: return "closed-form";
    }
    return "unknown";
}

double criticality_residual(const Model& model, const SymMat& sigma, const SymMat& s) {
    const SymMat score = score_matrix(sigma, s);
    auto worst_over = [&](const std::vector<SymMat>& tangents) {
        double worst = 0.0;
        for (const SymMat& t : tangents) {
            const double norm = t.matrix().norm();
            if (norm > 0.0) worst = std::max(worst, std::abs(trace_inner(score, t)) / norm);
        }
        return worst;
    };
    if (std::holds_alternative<CiUnion>(model) && ci_union_component(sigma) == 0) {
        // A diagonal point sits on both components; it is critical if it is
        // critical on either one.
        const std::vector<SymMat> diag{unit_sym(3, 0, 0), unit_sym(3, 1, 1), unit_sym(3, 2, 2)};
        auto first = diag, second = diag;
        first.push_back(unit_sym(3, 1, 2));
        second.push_back(unit_sym(3, 0, 1));
        return std::min(worst_over(first), worst_over(second));
    }
    return worst_over(tangent_basis(model, sigma));
}

namespace {

CriticalPoint make_point(const Model& model, SymMat sigma, const SymMat& s, PointSource source) {
    CriticalPoint cp;
    cp.loglik = log_likelihood(sigma, s);
    cp.residual = criticality_residual(model, sigma, s);
    cp.sigma = std::move(sigma);
    cp.source = source;
    return cp;
}

void require_sample(const SymMat& s, int m) {
    if (s.dim() != m) throw Error(ErrorKind::DimensionMismatch, "sample matrix has the wrong size");
    if (!is_positive_definite(s)) throw Error(ErrorKind::NotPD, "sample matrix is not PD");
}

SymMat combine(const std::vector<SymMat>& basis, const Eigen::VectorXd& coef) {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(basis.front().dim(), basis.front().dim());
    for (std::size_t j = 0; j < basis.size(); ++j) k += coef(j) * basis[j].matrix();
    return SymMat(k);
}

/// log det K - tr(SK), or -inf outside the PD cone.
double concentration_objective(const SymMat& k, const SymMat& s) {
    if (!is_positive_definite(k)) return -std::numeric_limits<double>::infinity();
    return log_det_pd(k) - trace_inner(s, k);
}

} // namespace

CriticalPoint mle_concentration(const LinearConcentration& model, const SymMat& s,
                                const SolverOptions& opts) {
    validate_model(model);
    const auto& basis = model.basis;
    const int d = static_cast<int>(basis.size());
    require_sample(s, basis.front().dim());

    Eigen::MatrixXd gram(d, d);
    Eigen::VectorXd target(d);
    for (int a = 0; a < d; ++a) {
        target(a) = trace_inner(s, basis[a]);
        for (int b = 0; b < d; ++b) gram(a, b) = trace_inner(basis[a], basis[b]);
    }
    const auto gram_ldlt = gram.ldlt();

    // Start from the trace-projection of S^{-1} onto L, then of the identity.
    Eigen::VectorXd coef;
    bool have_start = false;
    const SymMat s_inv = inverse_pd(s);
    for (const SymMat* guess : std::initializer_list<const SymMat*>{&s_inv, nullptr}) {
        Eigen::VectorXd rhs(d);
        for (int a = 0; a < d; ++a) rhs(a) = guess ? trace_inner(basis[a], *guess) : basis[a].matrix().trace();
        coef = gram_ldlt.solve(rhs);
        if (is_positive_definite(combine(basis, coef))) {
            have_start = true;
            break;
        }
    }
    if (!have_start) {
        throw Error(ErrorKind::NoInteriorPoint, "no positive definite starting point found in L");
    }

    SymMat k = combine(basis, coef);
    double f = concentration_objective(k, s);
    for (int iter = 0; iter <= opts.max_iter; ++iter) {
        const SymMat sigma = inverse_pd(k);
        Eigen::VectorXd grad(d);
        std::vector<Eigen::MatrixXd> sk(d);
        bool converged = true;
        for (int a = 0; a < d; ++a) {
            sk[a] = sigma.matrix() * basis[a].matrix();
            grad(a) = sk[a].trace() - target(a);
            converged = converged && std::abs(grad(a)) < 1e-10 * (1.0 + std::abs(target(a)));
        }
        if (converged) return make_point(model, sigma, s, PointSource::Unique);
        if (iter == opts.max_iter) break;

        Eigen::MatrixXd hess(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) hess(a, b) = hess(b, a) = (sk[a] * sk[b]).trace();
        const Eigen::VectorXd step = hess.ldlt().solve(grad);

        double t = 1.0;
        bool moved = false;
        while (t > 1e-20) {
            const Eigen::VectorXd trial = coef + t * step;
            const SymMat k_trial = combine(basis, trial);
            const double f_trial = concentration_objective(k_trial, s);
            if (f_trial >= f - 1e-14 * std::abs(f)) {
                coef = trial;
                k = k_trial;
                f = f_trial;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    throw Error(ErrorKind::NoConvergence, "concentration Newton iteration did not converge");
}

CriticalPoint mle_graph_decomposable(const Graph& g, const SymMat& s) {
    require_sample(s, g.size());
    if (!is_chordal(g).chordal) throw Error(ErrorKind::NotChordal, "graph is not chordal");

    std::function<SymMat(const Graph&, const SymMat&)> solve = [&](const Graph& h,
                                                                    const SymMat& sh) -> SymMat {
        if (h.is_complete()) return sh;
        const auto dec = find_reducible_decomposition(h);
        if (!dec) throw Error(ErrorKind::NotChordal, "no clique separator in a non-complete subgraph");
        const int m = h.size();
        const SymMat su = solve(h.induced(dec->U), principal_submatrix(sh, dec->U));
        const SymMat sw = solve(h.induced(dec->W), principal_submatrix(sh, dec->W));
        SymMat k = embed(inverse_pd(su), dec->U, m) + embed(inverse_pd(sw), dec->W, m);
        if (!dec->T.empty()) k -= embed(inverse_pd(principal_submatrix(sh, dec->T)), dec->T, m);
        return inverse_pd(k);
    };
    return make_point(UndirectedGraph{g}, solve(g, s), s, PointSource::ClosedForm);
}

std::pair<SemParams, CriticalPoint> mle_dag(const Digraph& dag, const SymMat& s) {
    validate_model(Dag{dag});
    require_sample(s, dag.size());
    const int m = dag.size();
    SemParams sem{Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
    for (int k = 0; k < m; ++k) {
        const IndexSet& pa = dag.parents(k);
        double omega = s(k, k);
        if (!pa.empty()) {
            const Eigen::MatrixXd spp = submatrix(s, pa, pa);
            const Eigen::VectorXd spk = submatrix(s, pa, {k});
            Eigen::LLT<Eigen::MatrixXd> llt(spp);
            if (llt.info() != Eigen::Success || !is_positive_definite(SymMat(spp))) {
                throw Error(ErrorKind::SingularParents, "parent covariance block is singular");
            }
            const Eigen::VectorXd beta = llt.solve(spk);
            for (std::size_t j = 0; j < pa.size(); ++j) sem.lambda(pa[j], k) = beta(j);
            omega -= spk.dot(beta);
        }
        sem.omega(k) = omega;
    }
    SymMat sigma = sem_covariance(dag, sem);
    return {sem, make_point(Dag{dag}, std::move(sigma), s, PointSource::ClosedForm)};
}

SymMat correlation_point(const Model& model, double x) {
    if (std::holds_alternative<BivariateCorrelation>(model)) return equicorrelation_matrix(2, x);
    if (const auto* e = std::get_if<Equicorrelation>(&model)) return equicorrelation_matrix(e->m, x);
    throw Error(ErrorKind::PreconditionFailed, "not a one-parameter correlation model");
}

namespace {

/// Damped Newton on the off-diagonal entries of K S K - K over correlation
/// matrices. Returns the converged off-diagonal vector or nothing.
std::optional<Eigen::VectorXd> correlation_newton(const SymMat& s, Eigen::VectorXd x,
                                                  const std::vector<std::pair<int, int>>& pairs,
                                                  const SolverOptions& opts) {
    const int m = s.dim();
    const int n = static_cast<int>(pairs.size());
    const Eigen::MatrixXd& sm = s.matrix();
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(m, m);
    auto load = [&](const Eigen::VectorXd& v) {
        for (int p = 0; p < n; ++p) sigma(pairs[p].first, pairs[p].second) = sigma(pairs[p].second, pairs[p].first) = v(p);
    };
    // Residual at x; empty optional when sigma(x) is not PD.
    Eigen::MatrixXd k(m, m), ksk(m, m);
    auto residual = [&](const Eigen::VectorXd& v, Eigen::VectorXd& f) {
        load(v);
        Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success || !is_positive_definite(SymMat(sigma))) return false;
        k = llt.solve(Eigen::MatrixXd::Identity(m, m));
        ksk = k * sm * k;
        f.resize(n);
        for (int p = 0; p < n; ++p) f(p) = ksk(pairs[p].first, pairs[p].second) - k(pairs[p].first, pairs[p].second);
        return true;
    };

    Eigen::VectorXd f, f_trial;
    if (!residual(x, f)) return std::nullopt;
    Eigen::MatrixXd jac(n, n);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const double norm = f.norm();
        if (norm < opts.tol) return x;
        // d(KSK - K) along E_p: dK S K + K S dK - dK with dK = -K E_p K.
        const Eigen::MatrixXd ks = k * sm;
        for (int p = 0; p < n; ++p) {
            const auto [i, j] = pairs[p];
            const Eigen::MatrixXd dk = -(k.col(i) * k.row(j) + k.col(j) * k.row(i));
            const Eigen::MatrixXd d = dk * ks.transpose() + ks * dk - dk;
            for (int q = 0; q < n; ++q) jac(q, p) = d(pairs[q].first, pairs[q].second);
        }
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-f);
        if (!step.allFinite()) return std::nullopt;
        double t = 1.0;
        bool moved = false;
        while (t > 1e-10) {
            const Eigen::VectorXd trial = x + t * step;
            if (residual(trial, f_trial) && f_trial.norm() < (1.0 - 1e-4 * t) * norm) {
                x = trial;
                f = f_trial;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) {
            // k/ksk may hold a rejected trial; the caller only needs convergence status.
            return norm < opts.tol ? std::optional<Eigen::VectorXd>(x) : std::nullopt;
        }
    }
    return f.norm() < opts.tol ? std::optional<Eigen::VectorXd>(x) : std::nullopt;
}

std::vector<CriticalPoint> multistart_correlation(const UnrestrictedCorrelation& model, const SymMat& s,
                                                  const SolverOptions& opts) {
    const int m = model.m;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    const int n = static_cast<int>(pairs.size());

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Eigen::VectorXd> found;
    for (int start = 0; start < opts.starts; ++start) {
        Eigen::VectorXd x(n);
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(m, m);
        for (int attempt = 0;; ++attempt) {
            for (int p = 0; p < n; ++p) {
                x(p) = unif(rng);
                sigma(pairs[p].first, pairs[p].second) = sigma(pairs[p].second, pairs[p].first) = x(p);
            }
            if (is_positive_definite(SymMat(sigma))) break;
            if (attempt > 10000) throw Error(ErrorKind::NoConvergence, "could not draw a PD start");
        }
        const auto root = correlation_newton(s, x, pairs, opts);
        if (!root) continue;
        const bool dup = std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& y) {
            return (y - *root).cwiseAbs().maxCoeff() < 1e-6;
        });
        if (!dup) found.push_back(*root);
    }
    if (found.empty()) throw Error(ErrorKind::NoConvergence, "multistart found no critical point");

    std::vector<CriticalPoint> out;
    for (const auto& x : found) {
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(m, m);
        for (int p = 0; p < n; ++p) sigma(pairs[p].first, pairs[p].second) = sigma(pairs[p].second, pairs[p].first) = x(p);
        out.push_back(make_point(model, SymMat(sigma), s, PointSource::Multistart));
    }
    return out;
}

std::vector<CriticalPoint> cubic_points(const Model& model, const SymMat& s, int m) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < m; ++i) a += s(i, i);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) b += s(i, j);
    a /= m;
    b /= 0.5 * m * (m - 1);
    const auto c = equicorrelation_cubic(m, a, b);
    const auto roots = cubic_roots_in_interval(c[0], c[1], c[2], c[3], -1.0 / (m - 1), 1.0);
    std::vector<CriticalPoint> out;
    double last = -2.0;
    for (double r : roots) {
        if (r - last < 1e-6) continue;
        last = r;
        out.push_back(make_point(model, correlation_point(model, r), s, PointSource::CubicRoot));
    }
    return out;
}

std::vector<CriticalPoint> ci_union_points(const SymMat& s) {
    Eigen::MatrixXd first = Eigen::MatrixXd::Zero(3, 3);
    first(0, 0) = s(0, 0);
    first.block(1, 1, 2, 2) = s.matrix().block(1, 1, 2, 2);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(3, 3);
    second.block(0, 0, 2, 2) = s.matrix().block(0, 0, 2, 2);
    second(2, 2) = s(2, 2);
    std::vector<CriticalPoint> out{make_point(CiUnion{}, SymMat(first), s, PointSource::ClosedForm)};
    if ((first - second).cwiseAbs().maxCoeff() >= 1e-6) {
        out.push_back(make_point(CiUnion{}, SymMat(second), s, PointSource::ClosedForm));
    }
    return out;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::vector<CriticalPoint> critical_points(const Model& model, const SymMat& s, const SolverOptions& opts) {
    validate_model(model);
    require_sample(s, model_matrix_dim(model));
    std::vector<CriticalPoint> out = std::visit(
        overloaded{
            [&](const LinearConcentration& lc) { return std::vector{mle_concentration(lc, s, opts)}; },
            [&](const UndirectedGraph& ug) {
                if (is_chordal(ug.graph).chordal) return std::vector{mle_graph_decomposable(ug.graph, s)};
                CriticalPoint cp = mle_concentration({graph_concentration_basis(ug.graph)}, s, opts);
                cp.residual = criticality_residual(model, cp.sigma, s);
                return std::vector{cp};
            },
            [&](const Dag& d) { return std::vector{mle_dag(d.dag, s).second}; },
            [&](const BivariateCorrelation&) { return cubic_points(model, s, 2); },
            [&](const Equicorrelation& e) { return cubic_points(model, s, e.m); },
            [&](const UnrestrictedCorrelation& u) { return multistart_correlation(u, s, opts); },
            [&](const CiUnion&) { return ci_union_points(s); },
        },
        model);
    std::stable_sort(out.begin(), out.end(),
                     [](const CriticalPoint& p, const CriticalPoint& q) { return p.loglik > q.loglik; });
    return out;
}

} // namespace logvor
