#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qlspb/instances.hpp"
#include "qlspb/kernel_solver.hpp"
#include "qlspb/parallel.hpp"

namespace qlspb {

/// Quadrature-averaged outcome of the exhaustive norm search in log space:
/// the norm guess is log-uniform on [1, kappa], endpoint masses enter with
/// weight 1 each and the interior integral with weight 2, normalized by
/// 2 ln(kappa) + 2.
struct NormSearchResult {
    double q_succ = 0.0;      // t-averaged success probability
    double mu_sq_avg = 0.0;   // success-conditioned average infidelity
    double bures_delta = 0.0;
    int ua_calls = 0;         // reflection degree, constant across guesses
    int nodes = 0;
    double q_left = 0.0;      // endpoint data at t = 1
    double mu_sq_left = 0.0;
    double q_right = 0.0;     // endpoint data at t = kappa
    double mu_sq_right = 0.0;
};

struct CalibrationResult {
    double eta = 0.0;
    double mean_error = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool band_hit = false;  // mean_error landed in [0.9, 1.0] * target
};

enum class CalibrationMode { known_norm, unknown_norm };

/// Reflection contexts for one instance at every norm-guess node, so that
/// repeated evaluations at different eta reuse the factorizations.
class UnknownNormCache {
public:
    UnknownNormCache(const ProblemInstance& inst, int nodes);
    NormSearchResult evaluate(double eta) const;
    double kappa() const { return kappa_; }

private:
    double kappa_;
    int nodes_;
    std::vector<KrContext> contexts_;  // one per quadrature point, ascending tau
    std::vector<double> weights_;      // interior Clenshaw-Curtis weights
};

/// Success probability and infidelity averaged over the norm search for one
/// instance. Degenerate nodes contribute their (tiny) exact values.
NormSearchResult evaluate_unknown_norm(const ProblemInstance& inst, double eta,
                                       int nodes = 30);

/// Aggregation core behind evaluate_unknown_norm, on an arbitrary profile
/// t -> (Q_t, mu_t^2). Exposed so the averaging weights can be tested with
/// injected profiles.
NormSearchResult average_profile(
    const std::function<std::pair<double, double>(double)>& profile, double kappa,
    int nodes, int ua_calls);

/// Largest eta whose ensemble mean error stays at or below target_delta,
/// found by bisection on ln(eta) over [ln 1e-6, ln 0.9]. The error objective
/// is the mean known-norm reflection error (t = ||x||) or the mean
/// unknown-norm Bures error, per mode. Stops once the mean error lands in
/// [0.9, 1.0] * target or after 40 iterations; band_hit records which.
CalibrationResult calibrate_eta(const std::vector<ProblemInstance>& ensemble,
                                double target_delta, CalibrationMode mode,
                                int nodes = 30, ExecMode exec = default_mode());

struct MonotonicityProbe {
    std::vector<double> bures_deltas;
    std::vector<int> violations;  // indices where the error strictly decreased
};

/// Evaluates the unknown-norm error across ascending etas on one instance
/// and flags any strict decrease beyond 1e-6 (the premise behind bisection).
MonotonicityProbe monotonicity_probe(const ProblemInstance& inst,
                                     const std::vector<double>& etas, int nodes = 30);

}  // namespace qlspb
