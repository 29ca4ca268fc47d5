#include "qlspb/kernel_solver.hpp"

#include <cmath>
#include <sstream>

#include "qlspb/errors.hpp"

namespace qlspb {

namespace {

constexpr double kDegeneratePSucc = 1e-14;
constexpr double kRootHalf = 0.70710678118654752440084436210485;

double kernel_threshold(double kappa) { return 0.5 / kappa; }

// Singular values can overshoot their promised ceiling of 1 by rounding in
// the upstream normalizations; clamp the overshoot, reject anything real.
double clamp_singular_value(double sigma) {
    if (sigma > 1.0 + 1e-6) {
        throw NumericalError("singular value exceeds the promised unit norm");
    }
    return std::min(sigma, 1.0);
}

}  // namespace

double solution_norm(const ProblemInstance& inst) {
    return direct_solve(inst.a, inst.b).norm();
}

AugmentedSystem augment(const ProblemInstance& inst, double t) {
    const double kappa = inst.kappa_measured;
    if (!(t >= 1.0 - 1e-9 && t <= kappa * (1.0 + 1e-9))) {
        std::ostringstream msg;
        msg << "augment: norm guess t = " << t << " outside [1, kappa = " << kappa << "]";
        throw DomainError(msg.str());
    }
    const int n = inst.n();
    const int m = n + 1;

    Vector x = direct_solve(inst.a, inst.b);
    const double norm_x = x.norm();
    if (norm_x > kappa * (1.0 + 1e-6)) {
        throw NumericalError("augment: ||x|| exceeds kappa; inconsistent instance");
    }

    AugmentedSystem aug;
    aug.t = t;
    aug.norm_x = norm_x;
    aug.theta_t = std::atan2(norm_x, t);
    aug.x_true = x / norm_x;

    aug.a_t = Matrix::Zero(m, m);
    aug.a_t.topLeftCorner(n, n) = inst.a;
    aug.a_t(n, n) = 1.0 / t;

    aug.b_prime.resize(m);
    aug.b_prime.head(n) = inst.b * kRootHalf;
    aug.b_prime(n) = kRootHalf;

    aug.x_t.resize(m);
    aug.x_t.head(n) = x;
    aug.x_t(n) = t;
    aug.x_t /= aug.x_t.norm();
    return aug;
}

Vector KernelOperator::kernel_direction() const {
    if (kernel_dim < 1) {
        throw NumericalError("kernel_direction: operator has empty kernel");
    }
    return svd.right.col(svd.right.cols() - 1);
}

KernelOperator build_kernel_operator(const Matrix& a, const Vector& b, double kappa) {
    if (std::abs(b.norm() - 1.0) > 1e-8) {
        throw DomainError("build_kernel_operator: b must be unit norm");
    }
    KernelOperator kop;
    kop.g = a - b * (b.transpose() * a);
    kop.svd = svd(kop.g);
    kop.kappa = kappa;

    const double threshold = kernel_threshold(kappa);
    const double floor = 1.0 / kappa - 1e-9;
    kop.kernel_dim = 0;
    for (int i = 0; i < kop.svd.sigma.size(); ++i) {
        const double s = kop.svd.sigma(i);
        if (s < threshold) {
            ++kop.kernel_dim;
        } else if (s < floor) {
            std::ostringstream msg;
            msg << "kernel operator: singular value " << s
                << " inside the forbidden gap (threshold " << threshold << ", floor "
                << floor << ")";
            throw GapViolationError(msg.str(), s);
        }
    }
    return kop;
}

KrContext::KrContext(AugmentedSystem aug, double kappa)
    : aug_(std::move(aug)), kappa_(kappa) {
    const int m = aug_.m();
    Matrix g = aug_.a_t - aug_.b_prime * (aug_.b_prime.transpose() * aug_.a_t);
    svd_ = svd(g);
    coeff_ = svd_.right.row(m - 1).transpose();  // V^T e_{m-1}
}

RunOutcome KrContext::run(double eta, bool lenient) const {
    const FilterSpec spec =
        FilterSpec::make(FilterKind::kernel_reflection, 1.0 / kappa_, eta);
    const int m = aug_.m();
    const int n = m - 1;

    Vector scaled(m);
    for (int i = 0; i < m; ++i) {
        scaled(i) = coeff_(i) * eval_k(spec, clamp_singular_value(svd_.sigma(i)));
    }
    const Vector psi = svd_.right * scaled;

    // Post-selection: project out e_{m-1}; what survives lives in the first
    // n coordinates.
    const Vector final_unnorm = psi.head(n);
    const double p_succ = final_unnorm.squaredNorm();

    RunOutcome out;
    out.ua_calls = spec.degree;
    out.p_succ = p_succ;
    if (p_succ < kDegeneratePSucc) {
        if (!lenient) {
            std::ostringstream msg;
            msg << "run_kr: success probability " << p_succ
                << " below tolerance (eta too large or norm guess far off)";
            throw DegenerateSuccessError(msg.str(), p_succ);
        }
        out.degenerate = true;
        out.output_state = Vector::Zero(n);
        out.error_l2 = std::sqrt(2.0);
        out.infidelity = 1.0;
        out.cost = p_succ > 0.0 ? out.ua_calls / p_succ
                                : std::numeric_limits<double>::infinity();
        return out;
    }

    out.output_state = final_unnorm / std::sqrt(p_succ);
    const double overlap = std::abs(out.output_state.dot(aug_.x_true));
    out.error_l2 = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    out.infidelity = std::max(0.0, 1.0 - overlap * overlap);
    out.cost = out.ua_calls / p_succ;
    return out;
}

RunOutcome run_kr(const AugmentedSystem& aug, double eta, double kappa) {
    return KrContext(aug, kappa).run(eta);
}

RunOutcome run_kp(const KernelOperator& kop, const Vector& input, double eta,
                  double kappa) {
    if (std::abs(input.norm() - 1.0) > 1e-8) {
        throw DomainError("run_kp: input must be unit norm");
    }
    if (input.size() != kop.g.rows()) {
        throw DomainError("run_kp: dimension mismatch");
    }
    const FilterSpec spec =
        FilterSpec::make(FilterKind::kernel_projection, 1.0 / kappa, eta);

    const Vector kernel_dir = kop.kernel_direction();
    const double in_overlap = kernel_dir.dot(input);
    const double mu_sq_in = std::max(0.0, 1.0 - in_overlap * in_overlap);
    if (mu_sq_in > 1.0 - 1e-12) {
        throw FilterDivergenceError("run_kp: input orthogonal to the kernel");
    }

    Vector coords = kop.svd.right.transpose() * input;
    for (int i = 0; i < coords.size(); ++i) {
        coords(i) *= eval_f(spec, clamp_singular_value(kop.svd.sigma(i)));
    }
    const Vector unnorm = kop.svd.right * coords;
    const double p_succ = unnorm.squaredNorm();

    RunOutcome out;
    out.ua_calls = spec.degree;
    out.p_succ = p_succ;
    out.output_state = unnorm / std::sqrt(p_succ);
    const double overlap = std::abs(out.output_state.dot(kernel_dir));
    out.error_l2 = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    out.infidelity = std::max(0.0, 1.0 - overlap * overlap);
    out.cost = out.ua_calls / p_succ;
    return out;
}

RunOutcome known_norm_run(const ProblemInstance& inst, double epsilon, EtaRule rule,
                          double eta) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw DomainError("known_norm_run: epsilon must lie in (0, 0.5)");
    }
    const double eta_used = rule == EtaRule::worst_case ? epsilon * kRootHalf : eta;
    if (!(eta_used > 0.0 && eta_used <= 1.0)) {
        throw DomainError("known_norm_run: eta must lie in (0, 1]");
    }
    AugmentedSystem aug = augment(inst, solution_norm(inst));
    return run_kr(aug, eta_used, inst.kappa_measured);
}

}  // namespace qlspb
