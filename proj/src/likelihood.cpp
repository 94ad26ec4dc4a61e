#include "logvor/likelihood.hpp"

#include "logvor/error.hpp"

namespace logvor {

double log_likelihood(const SymMat& sigma, const SymMat& s) {
    if (sigma.dim() != s.dim()) throw Error(ErrorKind::DimensionMismatch, "log_likelihood");
    if (!is_positive_definite(s)) throw Error(ErrorKind::NotPD, "sample matrix is not PD");
    if (!is_positive_definite(sigma)) throw Error(ErrorKind::NotPD, "Sigma is not PD");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma.matrix());
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double trace = llt.solve(s.matrix()).trace();
    return -log_det - trace;
}

SymMat score_matrix(const SymMat& sigma, const SymMat& s) {
    if (sigma.dim() != s.dim()) throw Error(ErrorKind::DimensionMismatch, "score_matrix");
    const SymMat k = inverse_pd(sigma);
    return SymMat(k.matrix() * s.matrix() * k.matrix() - k.matrix());
}

} // namespace logvor
