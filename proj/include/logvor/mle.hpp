#pragma once

#include "logvor/model.hpp"

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace logvor {

enum class PointSource { Unique, CubicRoot, Multistart, ClosedForm };

std::string_view point_source_name(PointSource s);

struct CriticalPoint {
    SymMat sigma;
    double loglik = 0.0;
    PointSource source = PointSource::Unique;
    /// Largest |<score, T>| over unit-normalized tangent directions T.
    double residual = 0.0;
};

struct SolverOptions {
    int starts = 512;
    std::uint64_t seed = 0;
    double tol = 1e-12;
    int max_iter = 100;
};

/// max_k |<score_matrix(sigma, s), T_k>| / |T_k|_F over the tangent basis at sigma.
double criticality_residual(const Model& model, const SymMat& sigma, const SymMat& s);

/// Unique maximizer of log det K - tr(SK) over K in span(basis) intersected
/// with the PD cone, by damped Newton on the coefficient vector.
CriticalPoint mle_concentration(const LinearConcentration& model, const SymMat& s,
                                const SolverOptions& opts = {});

/// Closed-form MLE for chordal graphs by recursive clique-separator
/// decomposition. Throws NotChordal otherwise.
CriticalPoint mle_graph_decomposable(const Graph& g, const SymMat& s);

/// MLE for a DAG model via one least-squares regression per vertex.
std::pair<SemParams, CriticalPoint> mle_dag(const Digraph& dag, const SymMat& s);

/// All real positive definite critical points of l(., s) on the model,
/// sorted by descending log-likelihood. Exhaustive for every family except
/// UnrestrictedCorrelation, where multistart Newton is best-effort.
std::vector<CriticalPoint> critical_points(const Model& model, const SymMat& s,
                                           const SolverOptions& opts = {});

/// Bivariate / equicorrelation critical point Sigma_x built from a cubic root.
SymMat correlation_point(const Model& model, double x);

} // namespace logvor
