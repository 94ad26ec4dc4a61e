#pragma once

#include "logvor/sym_mat.hpp"

namespace logvor {

/// Gaussian log-likelihood with the n/2 factor dropped:
///   l(Sigma, S) = -log det Sigma - tr(S Sigma^{-1}).
/// Throws NotPD if either argument is not positive definite.
double log_likelihood(const SymMat& sigma, const SymMat& s);

/// Gradient of l in Sigma: Sigma^{-1} S Sigma^{-1} - Sigma^{-1}.
/// The directional derivative along a symmetric D is tr(score * D).
SymMat score_matrix(const SymMat& sigma, const SymMat& s);

} // namespace logvor
