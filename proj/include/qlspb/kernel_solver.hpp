#pragma once

#include "qlspb/filter_poly.hpp"
#include "qlspb/instances.hpp"
#include "qlspb/linalg.hpp"

namespace qlspb {

/// The n-dimensional system embedded in dimension m = n + 1 with a norm
/// guess t: A_t = diag(A, 1/t), b' = (b, 1)/sqrt(2). The augmented solution
/// x_t mixes the true solution direction with e_{m-1} at angle
/// theta_t = arctan(||x|| / t).
struct AugmentedSystem {
    double t = 0.0;
    Matrix a_t;
    Vector b_prime;
    Vector x_t;       // normalized augmented solution, dimension m
    double theta_t = 0.0;
    Vector x_true;    // normalized A^{-1} b, dimension n
    double norm_x = 0.0;

    int n() const { return static_cast<int>(a_t.rows()) - 1; }
    int m() const { return static_cast<int>(a_t.rows()); }
};

/// G = (I - b b^T) A together with its SVD. The nonzero singular values are
/// promised to stay at or above 1/kappa; anything below 1/(2 kappa) counts
/// as kernel.
struct KernelOperator {
    Matrix g;
    SvdFactors svd;
    int kernel_dim = 0;
    double kappa = 0.0;

    /// Right singular vector spanning the kernel (kernel_dim == 1 case).
    Vector kernel_direction() const;
};

/// One reflection or projection run, post-selected on success.
struct RunOutcome {
    double p_succ = 0.0;
    Vector output_state;     // normalized; dimension n after a KR run
    double error_l2 = 0.0;   // phase-fixed distance to the reference state
    double infidelity = 0.0; // 1 - overlap^2 with the reference state
    int ua_calls = 0;        // polynomial degree 2l
    double cost = 0.0;       // ua_calls / p_succ
    bool degenerate = false; // success probability below tolerance
};

/// Builds the augmented system for norm guess t in [1, kappa]. Also solves
/// the original system (classical oracle) to obtain x and theta_t.
AugmentedSystem augment(const ProblemInstance& inst, double t);

/// ||A^{-1} b||, the exact norm used by the known-norm pipeline.
double solution_norm(const ProblemInstance& inst);

KernelOperator build_kernel_operator(const Matrix& a, const Vector& b, double kappa);

/// Reflection run cache for one (instance, t): the SVD of G_t is factored
/// once, after which each eta costs O(m^2).
class KrContext {
public:
    KrContext(AugmentedSystem aug, double kappa);

    /// Applies the degree-2l reflection polynomial to the singular values of
    /// G_t, starting from e_{m-1}, and post-selects away the e_{m-1}
    /// component. lenient keeps degenerate runs as data (tiny p_succ,
    /// flagged) instead of throwing DegenerateSuccessError.
    RunOutcome run(double eta, bool lenient = false) const;

    const AugmentedSystem& system() const { return aug_; }
    const SvdFactors& factors() const { return svd_; }
    double kappa() const { return kappa_; }

private:
    AugmentedSystem aug_;
    double kappa_;
    SvdFactors svd_;   // of G_t
    Vector coeff_;     // V^T e_{m-1}
};

/// Kernel reflection on the augmented system. See KrContext::run.
RunOutcome run_kr(const AugmentedSystem& aug, double eta, double kappa);

/// Kernel projection: output proportional to V F(Sigma) V^T input. The
/// reference state for the error fields is the kernel direction of kop.
RunOutcome run_kp(const KernelOperator& kop, const Vector& input, double eta,
                  double kappa);

enum class EtaRule { calibrated, worst_case };

/// Known-norm pipeline: t = ||x|| exactly, a single reflection stage, no
/// filtering. worst_case picks eta = epsilon / sqrt(2); calibrated uses the
/// supplied eta.
RunOutcome known_norm_run(const ProblemInstance& inst, double epsilon, EtaRule rule,
                          double eta = 0.0);

}  // namespace qlspb
