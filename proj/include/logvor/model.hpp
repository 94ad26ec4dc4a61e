#pragma once

#include "logvor/graph.hpp"
#include "logvor/sym_mat.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace logvor {

struct LinearConcentration {
    std::vector<SymMat> basis;
};
struct UndirectedGraph {
    Graph graph;
};
struct Dag {
    Digraph dag;
};
struct BivariateCorrelation {};
struct Equicorrelation {
    int m = 2;
};
struct UnrestrictedCorrelation {
    int m = 2;
};
/// The 3x3 conditional-independence model {sigma13 = 0, sigma12 sigma23 = 0}:
/// union of the planes {sigma12 = sigma13 = 0} (first component) and
/// {sigma13 = sigma23 = 0} (second component).
struct CiUnion {};

using Model = std::variant<LinearConcentration, UndirectedGraph, Dag, BivariateCorrelation,
                           Equicorrelation, UnrestrictedCorrelation, CiUnion>;

std::string_view model_kind(const Model& model);
/// Size m of the covariance matrices in the model.
int model_matrix_dim(const Model& model);
/// Dimension of the model as a manifold (at nonsingular points).
int model_dimension(const Model& model);
/// True for the families whose ML degree is one or whose likelihood is
/// concave on the model, so that every critical point is the MLE.
bool has_unique_critical_point(const Model& model);

/// Concentration basis {E_ii} + {E_ij + E_ji : ij edge}.
std::vector<SymMat> graph_concentration_basis(const Graph& g);

/// Checks the structural invariants of a model (basis independence, ranges).
void validate_model(const Model& model);

/// Trek-rule parameters: variances a_i = sigma_ii and one lambda per arc,
/// aligned with Digraph::arcs().
struct DagParams {
    std::vector<double> a;
    std::vector<double> lambda;
};

/// Structural equation parameters. `omega` is the diagonal of Omega;
/// `lambda` is strictly upper triangular and supported on arcs.
struct SemParams {
    Eigen::VectorXd omega;
    Eigen::MatrixXd lambda;
};

SymMat trek_covariance(const Digraph& dag, const DagParams& params);
SymMat sem_covariance(const Digraph& dag, const SemParams& params);

/// omega_j = a_j - Sigma_{j,pa} Sigma_{pa,pa}^{-1} Sigma_{pa,j} on the trek covariance.
SemParams dag_params_to_sem(const Digraph& dag, const DagParams& params);
/// Recovers (a, lambda) of a model point by regressing each vertex on its parents.
DagParams dag_params_from_sigma(const Digraph& dag, const SymMat& sigma);

/// (1 - x) I + x 11^T; throws OutOfRange unless -1/(m-1) < x < 1.
SymMat equicorrelation_matrix(int m, double x);

bool model_contains(const Model& model, const SymMat& sigma, double tol);

/// Spanning set of the tangent space of the model at sigma (partial
/// derivatives of the model's parametrization). Throws SingularPoint at
/// points of CiUnion lying on both components.
std::vector<SymMat> tangent_basis(const Model& model, const SymMat& sigma);

/// Which component of CiUnion a point lies on: 1, 2, or 0 for both.
int ci_union_component(const SymMat& sigma);

} // namespace logvor
