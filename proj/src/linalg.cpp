#include "qlspb/linalg.hpp"

#include <cmath>

#include "qlspb/errors.hpp"

namespace qlspb {

namespace {

// Largest-magnitude entry of each right singular vector made positive so
// factorizations are reproducible run to run. Ties resolve to the first
// maximal index.
void fix_signs(Matrix& u, Matrix& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = 0.0;
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            double mag = std::abs(v(i, j));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        if (v(imax, j) < 0.0) {
            v.col(j) = -v.col(j);
            if (j < u.cols()) u.col(j) = -u.col(j);
        }
    }
}

}  // namespace

SvdFactors svd(const Matrix& m) {
    if (!m.allFinite()) {
        throw NumericalError("svd: input has non-finite entries");
    }
    Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdFactors out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    if (!out.sigma.allFinite()) {
        throw NumericalError("svd: decomposition did not converge");
    }
    fix_signs(out.left, out.right);
    return out;
}

Vector direct_solve(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols() || a.rows() != b.size()) {
        throw DomainError("direct_solve: dimension mismatch");
    }
    SvdFactors f = svd(a);
    const double sigma_min = f.sigma(f.sigma.size() - 1);
    if (sigma_min <= 1e-13) {
        throw SingularMatrixError("direct_solve: matrix numerically singular", sigma_min);
    }
    Vector c = f.left.transpose() * b;
    c.array() /= f.sigma.array();
    return f.right * c;
}

double phase_fixed_distance(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw DomainError("phase_fixed_distance: dimension mismatch");
    }
    double overlap = std::abs(u.dot(v));
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

double bures_from_infidelity(double mu_sq) {
    if (mu_sq < -1e-12 || mu_sq > 1.0 + 1e-12) {
        throw DomainError("bures_from_infidelity: infidelity outside [0, 1]");
    }
    mu_sq = std::clamp(mu_sq, 0.0, 1.0);
    return std::sqrt(2.0 * (1.0 - std::sqrt(1.0 - mu_sq)));
}

double infidelity_from_bures(double d) {
    double f = 1.0 - 0.5 * d * d;
    return 1.0 - f * f;
}

double condition_number(const Matrix& m) {
    SvdFactors f = svd(m);
    return f.sigma(0) / f.sigma(f.sigma.size() - 1);
}

}  // namespace qlspb
