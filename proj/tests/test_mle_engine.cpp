#include "logvor/cubic.hpp"
#include "logvor/error.hpp"
#include "logvor/likelihood.hpp"
#include "logvor/mle.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <functional>

using namespace logvor;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::ParseError;
}

bool close_sets(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    if (got.size() != want.size()) return false;
    for (std::size_t k = 0; k < got.size(); ++k)
        if (std::abs(got[k] - want[k]) > tol) return false;
    return true;
}

SymMat path_sigma() {
    Eigen::Matrix4d a;
    a << 6, 1, 1.0 / 7, 1.0 / 28, 1, 7, 1, 0.25, 1.0 / 7, 1, 8, 2, 1.0 / 28, 0.25, 2, 9;
    return SymMat(a);
}

const Digraph& example_dag() {
    static const Digraph d(4, {{0, 1}, {1, 3}, {2, 3}});
    return d;
}

void check_point_invariants(const Model& model, const SymMat& s, const std::vector<CriticalPoint>& points) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        CHECK(model_contains(model, points[k].sigma, 1e-8));
        CHECK(criticality_residual(model, points[k].sigma, s) < 1e-8);
        CHECK(points[k].residual < 1e-8);
        CHECK(std::abs(points[k].loglik - log_likelihood(points[k].sigma, s)) < 1e-12);
        if (k > 0) CHECK(points[k - 1].loglik >= points[k].loglik);
    }
}

} // namespace

TEST_CASE("cubic roots examples") {
    CHECK(close_sets(cubic_roots_in_interval(1, 0, -0.25, 0, -1, 1), {-0.5, 0.0, 0.5}, 1e-12));
    CHECK(close_sets(cubic_roots_in_interval(1, 0, 0, 0, -1, 1), {0.0}, 1e-12));
    CHECK(kind_of([] { cubic_roots_in_interval(0, 1, 1, 1, -1, 1); }) == ErrorKind::DegenerateLeadingCoefficient);

    // Sigma_c is a root whenever (a, b) satisfy the slice relation.
    const double c = 0.5;
    for (double b : {0.1, -0.1}) {
        const double a = (b * c * c - c * c * c + b + c) / (2 * c);
        const auto coef = bivariate_cubic({a, b});
        const auto roots = cubic_roots_in_interval(coef[0], coef[1], coef[2], coef[3], -1, 1);
        const double radicand = b * b * c * c - 2 * b * c * c * c + c * c * c * c - 4 * b * c;
        if (radicand < 0) {
            CHECK(close_sets(roots, {c}, 1e-10));
        } else {
            std::vector<double> want{(b * c - c * c - std::sqrt(radicand)) / (2 * c), c,
                                     (b * c - c * c + std::sqrt(radicand)) / (2 * c)};
            std::sort(want.begin(), want.end());
            CHECK(close_sets(roots, want, 1e-10));
        }
    }
}

TEST_CASE("cubic roots match the closed-form solution") {
    std::mt19937_64 rng(30);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 500; ++trial) {
        const double c3 = 0.5 + std::abs(u(rng)), c2 = u(rng), c1 = u(rng), c0 = u(rng);
        std::vector<double> want;
        for (double r : oracle::cubic_real_roots(c3, c2, c1, c0))
            if (r > -1 && r < 1) want.push_back(r);
        const auto got = cubic_roots_in_interval(c3, c2, c1, c0, -1, 1);
        // Skip near-double roots where the count is ill-conditioned.
        bool separated = true;
        for (std::size_t k = 1; k < want.size(); ++k)
            if (want[k] - want[k - 1] < 1e-4) separated = false;
        for (double r : want)
            if (std::abs(std::abs(r) - 1) < 1e-6) separated = false;
        if (separated) CHECK(close_sets(got, want, 1e-9));
    }
}

TEST_CASE("discriminant") {
    CHECK(bivariate_discriminant(0.5, 0.0) == doctest::Approx(0.0));
    CHECK(bivariate_discriminant(3.0 / 8, 0.0) == doctest::Approx(1.0 / 16));
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = 3 * u(rng), b = a * (2 * u(rng) - 1);
        const double d = bivariate_discriminant(a, b);
        if (std::abs(d) < 1e-9) continue;
        CHECK((d > 0) == (oracle::distinct_real_root_count(-b, 2 * a - 1, -b) == 3));
    }
}

TEST_CASE("equicorrelation cubic") {
    const auto m2 = equicorrelation_cubic(2, 0.7, 0.2);
    const auto biv = bivariate_cubic({0.7, 0.2});
    for (int k = 0; k < 4; ++k) CHECK(m2[k] == doctest::Approx(biv[k]));
    const auto m3 = equicorrelation_cubic(3, 1, 0);
    CHECK(m3 == std::array<double, 4>{2, 0, 1, 0});
    CHECK(close_sets(cubic_roots_in_interval(m3[0], m3[1], m3[2], m3[3], -0.5, 1), {0.0}, 1e-12));

    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    while (checked < 100) {
        const int m = 2 + static_cast<int>(u(rng) * 5);
        const double lo = -1.0 / (m - 1);
        const double c = lo + (1 - lo) * (0.05 + 0.9 * u(rng));
        const double b = 4 * u(rng) - 2;
        if (std::abs(c) < 1e-3) continue;
        const double a = -((b + 2) * c * c - c * c * c - ((b + 1) * c * c - c * c * c) * m - b - c) /
                         (c * c * m - 2 * c * c + 2 * c);
        ++checked;
        const auto f = equicorrelation_cubic(m, a, b);
        CHECK(std::abs(eval_cubic(f, c)) < 1e-10 * (1 + std::abs(a) + std::abs(b)) * m);
        bool found = false;
        for (double r : cubic_roots_in_interval(f[0], f[1], f[2], f[3], lo, 1))
            if (std::abs(r - c) < 1e-7) found = true;
        CHECK(found);
    }
}

TEST_CASE("concentration MLE") {
    std::mt19937_64 rng(33);
    const SymMat s(oracle::random_pd(3, rng));
    std::vector<SymMat> full;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) full.push_back(unit_sym(3, i, j));
    const auto sat = mle_concentration(LinearConcentration{full}, s);
    CHECK(max_abs_diff(sat.sigma, s) < 1e-10);
    CHECK(sat.source == PointSource::Unique);

    // One-dimensional model: Sigma-hat = K^{-1} / lambda with tr(SK) = m / lambda.
    const SymMat k(oracle::random_pd(3, rng));
    const double lambda = 3.0 / trace_inner(s, k);
    const auto one = mle_concentration(LinearConcentration{{k}}, s);
    CHECK(max_abs_diff(one.sigma, (1.0 / lambda) * inverse_pd(k)) < 1e-10);

    // Samples on the path slice recover Sigma.
    const Graph g = Graph::path(4);
    const SymMat sigma = path_sigma();
    const auto basis = graph_concentration_basis(g);
    for (double x : {-0.5, 0.3, 1.2}) {
        SymMat sample = sigma;
        sample.set(0, 2, x);
        sample.set(1, 3, -x / 2);
        REQUIRE(is_positive_definite(sample));
        CHECK(max_abs_diff(mle_concentration(LinearConcentration{basis}, sample).sigma, sigma) < 1e-8);
    }

    // Off-diagonal only basis has no PD member.
    CHECK(kind_of([] { mle_concentration(LinearConcentration{{unit_sym(2, 0, 1)}}, SymMat::identity(2)); }) ==
          ErrorKind::NoInteriorPoint);
}

TEST_CASE("decomposable MLE") {
    std::mt19937_64 rng(34);
    const SymMat s(oracle::random_pd(4, rng));
    CHECK(max_abs_diff(mle_graph_decomposable(Graph::complete(4), s).sigma, s) < 1e-12);
    CHECK(max_abs_diff(mle_graph_decomposable(Graph::path(4), SymMat::identity(4)).sigma, SymMat::identity(4)) < 1e-14);
    CHECK(kind_of([&] { mle_graph_decomposable(Graph::cycle(4), s); }) == ErrorKind::NotChordal);

    // Random chordal graphs agree with the Newton solver.
    const std::vector<Graph> graphs{Graph::path(4), Graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}}),
                                    Graph(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {4, 5}}),
                                    Graph(5, {{0, 1}, {2, 3}, {3, 4}})};
    for (const Graph& g : graphs) {
        for (int trial = 0; trial < 25; ++trial) {
            const SymMat sample(oracle::random_pd(g.size(), rng));
            const auto newton = mle_concentration(LinearConcentration{graph_concentration_basis(g)}, sample);
            const auto closed = mle_graph_decomposable(g, sample);
            CHECK(max_abs_diff(newton.sigma, closed.sigma) < 1e-8);
            CHECK(criticality_residual(UndirectedGraph{g}, closed.sigma, sample) < 1e-8);
        }
    }
}

TEST_CASE("DAG MLE") {
    std::mt19937_64 rng(35);
    const SymMat s(oracle::random_pd(3, rng));
    const auto [params, edgeless] = mle_dag(Digraph(3, {}), s);
    CHECK(max_abs_diff(edgeless.sigma, SymMat::diagonal(std::vector<double>{s(0, 0), s(1, 1), s(2, 2)})) < 1e-14);

    const SymMat sigma = trek_covariance(example_dag(), {{1, 2, 3, 4}, {0.5, 1, 0.5}});
    CHECK(max_abs_diff(mle_dag(example_dag(), sigma).second.sigma, sigma) < 1e-12);

    // The unique critical point beats random model points.
    const Model model = Dag{example_dag()};
    std::uniform_real_distribution<double> pos(0.3, 4), coef(-1.5, 1.5);
    auto random_point = [&] {
        Eigen::VectorXd omega(4);
        for (int i = 0; i < 4; ++i) omega(i) = pos(rng);
        Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(4, 4);
        for (const auto& [i, j] : example_dag().arcs()) lambda(i, j) = coef(rng);
        return SymMat(oracle::sem_cov(omega, lambda));
    };
    for (int trial = 0; trial < 10; ++trial) {
        const SymMat sample(oracle::random_pd(4, rng));
        const auto points = critical_points(model, sample);
        REQUIRE(points.size() == 1);
        check_point_invariants(model, sample, points);
        for (int k = 0; k < 100; ++k) {
            const SymMat other = random_point();
            CHECK(log_likelihood(other, sample) <= points[0].loglik + 1e-12);
        }
    }
}

TEST_CASE("critical points of the bivariate model") {
    Eigen::Matrix2d s;
    s << 3.0 / 8, 0, 0, 3.0 / 8;
    const auto points = critical_points(BivariateCorrelation{}, SymMat(s));
    REQUIRE(points.size() == 3);
    std::vector<double> xs;
    for (const auto& p : points) xs.push_back(p.sigma(0, 1));
    std::sort(xs.begin(), xs.end());
    CHECK(close_sets(xs, {-0.5, 0.0, 0.5}, 1e-10));

    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 300; ++trial) {
        const SymMat sample(oracle::random_pd(2, rng, 0.01));
        const double a = 0.5 * (sample(0, 0) + sample(1, 1)), b = sample(0, 1);
        int expected = 0;
        for (double r : oracle::cubic_real_roots(1, -b, 2 * a - 1, -b))
            if (r > -1 && r < 1) ++expected;
        const auto pts = critical_points(BivariateCorrelation{}, sample);
        CHECK(pts.size() >= 1);
        CHECK(pts.size() <= 3);
        if (std::abs(bivariate_discriminant(a, b)) > 1e-6) CHECK(static_cast<int>(pts.size()) == expected);
        check_point_invariants(BivariateCorrelation{}, sample, pts);
    }
}

TEST_CASE("critical points of the CI union model") {
    Eigen::Matrix3d s;
    s << 2, 1, 0.7, 1, 3, 0.5, 0.7, 0.5, 4;
    const auto points = critical_points(CiUnion{}, SymMat(s));
    REQUIRE(points.size() == 2);
    check_point_invariants(CiUnion{}, SymMat(s), points);
    Eigen::Matrix3d t, u;
    t << 2, 0, 0, 0, 3, 0.5, 0, 0.5, 4;
    u << 2, 1, 0, 1, 3, 0, 0, 0, 4;
    bool found_t = false, found_u = false;
    for (const auto& p : points) {
        found_t = found_t || max_abs_diff(p.sigma, SymMat(t)) < 1e-15;
        found_u = found_u || max_abs_diff(p.sigma, SymMat(u)) < 1e-15;
    }
    CHECK(found_t);
    CHECK(found_u);
}

TEST_CASE("critical points of the equicorrelation model") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 3 + trial % 3;
        const SymMat sample(oracle::random_pd(m, rng));
        const auto pts = critical_points(Equicorrelation{m}, sample);
        CHECK(!pts.empty());
        check_point_invariants(Equicorrelation{m}, sample, pts);
    }
}

TEST_CASE("elliptope critical points") {
    Eigen::Matrix3d s;
    s << 1211.0 / 4560, -217.0 / 3420, 1.0 / 30, -217.0 / 3420, 827.0 / 2565, 1.0 / 9, 1.0 / 30, 1.0 / 9, 1;
    const Model model = UnrestrictedCorrelation{3};
    const auto points = critical_points(model, SymMat(s));
    REQUIRE(points.size() == 3);
    check_point_invariants(model, SymMat(s), points);
    CHECK(points[0].loglik == doctest::Approx(-1.24750351572487).epsilon(1e-9));
    CHECK(points[0].source == PointSource::Multistart);
}

TEST_CASE("elliptope multistart is stable against more starts") {
    std::mt19937_64 rng(38);
    const Model model = UnrestrictedCorrelation{3};
    SolverOptions many;
    many.starts = 4096;
    int missing = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const SymMat sample(oracle::random_pd(3, rng));
        const auto base = critical_points(model, sample);
        const auto wide = critical_points(model, sample, many);
        check_point_invariants(model, sample, base);
        for (const auto& w : wide) {
            bool found = false;
            for (const auto& p : base) found = found || max_abs_diff(p.sigma, w.sigma) < 1e-6;
            if (!found) ++missing;
        }
    }
    CHECK(missing == 0);
}

TEST_CASE("multistart is deterministic per seed") {
    std::mt19937_64 rng(39);
    const SymMat sample(oracle::random_pd(4, rng));
    const auto a = critical_points(UnrestrictedCorrelation{4}, sample);
    const auto b = critical_points(UnrestrictedCorrelation{4}, sample);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(max_abs_diff(a[k].sigma, b[k].sigma) == 0.0);
}
