#pragma once

#include <Eigen/Dense>

namespace qlspb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// SVD of a real dense matrix, M = U * diag(sigma) * V^T, with singular
/// values sorted nonincreasing and a fixed sign convention: the
/// largest-magnitude entry of each right singular vector is positive.
struct SvdFactors {
    Matrix left;     // U, columns orthonormal
    Vector sigma;    // nonincreasing, >= 0
    Matrix right;    // V, columns orthonormal
};

/// Full SVD; deterministic for a given input on a given build.
/// Throws NumericalError on non-finite input.
SvdFactors svd(const Matrix& m);

/// Solves A x = b through the SVD. Throws SingularMatrixError (carrying
/// sigma_min) when the smallest singular value is at or below 1e-13.
Vector direct_solve(const Matrix& a, const Vector& b);

/// sqrt(2 - 2|<u,v>|) for unit vectors: the l2 distance between pure states
/// after fixing the global sign. Throws DomainError on dimension mismatch.
double phase_fixed_distance(const Vector& u, const Vector& v);

/// Bures distance from an infidelity mu^2: sqrt(2 (1 - sqrt(1 - mu^2))).
/// Accepts arguments within 1e-12 of [0, 1]; throws DomainError otherwise.
double bures_from_infidelity(double mu_sq);

/// Inverse of bures_from_infidelity: mu^2 = 1 - (1 - d^2/2)^2.
double infidelity_from_bures(double d);

/// sigma_max / sigma_min of a matrix.
double condition_number(const Matrix& m);

}  // namespace qlspb
