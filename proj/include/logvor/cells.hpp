#pragma once

#include "logvor/mle.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace logvor {

/// Ties between log-likelihood values within this band count as equal.
inline constexpr double kTieBand = 1e-9;
/// Criticality tolerance used by cell_membership when locating S on the slice.
inline constexpr double kSliceTol = 1e-8;

/// Log-normal matrix space at a model point: base + span(directions).
/// Directions are Frobenius-orthonormal.
struct AffineSlice {
    SymMat base;
    std::vector<SymMat> directions;
};

enum class CellStatus { InCell, InSpectrahedronNotCell, NotInSpectrahedron, NotPD };

std::string_view cell_status_name(CellStatus s);

struct MembershipVerdict {
    CellStatus status = CellStatus::NotPD;
    std::optional<CriticalPoint> witness;
    /// l(Sigma, S) minus the best competing critical value; +inf when there is
    /// no competitor, NaN when S is not in the spectrahedron.
    double margin = 0.0;
    /// Set when the competitor list came from multistart search.
    bool best_effort = false;
};

struct MembershipOptions {
    SolverOptions solver;
    double slice_tol = kSliceTol;
};

AffineSlice lognormal_basis(const Model& model, const SymMat& sigma);

bool in_spectrahedron(const Model& model, const SymMat& sigma, const SymMat& s, double tol);

MembershipVerdict cell_membership(const Model& model, const SymMat& sigma, const SymMat& s,
                                  const MembershipOptions& opts = {});

/// Closed-form cell of the bivariate correlation model at Sigma_c: the sign
/// of b = S12 decides for c != 0, and a >= 1/2 for c = 0. Throws NotOnSlice
/// when Sigma_c is not a critical point for S.
bool bivariate_cell(double c, const SymMat& s);

/// Strip rule for CiUnion at a point on exactly one component.
bool ci_union_cell(const SymMat& sigma, const SymMat& s);

struct Symmetrized {
    double a = 0.0;
    double b = 0.0;
    SymMat sbar;
};

/// Average of P S P^T over all permutation matrices P.
Symmetrized symmetrize(const SymMat& s);

/// Cell of the equicorrelation model at Sigma_c, via the symmetrized sample
/// and the roots of f_m.
bool equicorrelation_cell(int m, double c, const SymMat& s);

/// (embed(S1^-1) + embed(S2^-1) - embed(Sigma_TT^-1))^-1 + M for the
/// decomposition found by find_reducible_decomposition.
SymMat compose_cell(const Graph& g, const SymMat& sigma, const SymMat& s1, const SymMat& s2,
                    const SymMat& m);

struct CellProjection {
    Decomposition decomposition;
    SymMat s1;
    SymMat s2;
    SymMat m;
};

CellProjection project_cell(const Graph& g, const SymMat& sigma, const SymMat& s);

/// Deterministic rejection sampler on the log-normal spectrahedron. A
/// non-positive radius selects 0.5 * lambda_min(Sigma).
std::vector<SymMat> sample_spectrahedron(const Model& model, const SymMat& sigma, int count,
                                         std::uint64_t seed, double radius = 0.0);

} // namespace logvor
