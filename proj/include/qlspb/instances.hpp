#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qlspb/linalg.hpp"
#include "qlspb/parallel.hpp"

namespace qlspb {

enum class Kind { non_hermitian, positive_definite, sparse };

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

/// One benchmark linear system. Dense kinds carry an exact target condition
/// number; the sparse kind carries the accepted band. Regenerating from
/// (kind, n, kappa spec, seed) reproduces the same bytes.
struct ProblemInstance {
    std::string id;
    Kind kind = Kind::non_hermitian;
    Matrix a;                 // spectral norm 1
    Vector b;                 // unit norm
    double kappa_target = 0.0;  // dense kinds
    double band_lo = 0.0;       // sparse kind
    double band_hi = 0.0;
    double density = 0.0;       // sparse kind
    double kappa_measured = 0.0;
    std::uint64_t seed = 0;
    int retries = 0;  // degenerate-sample or out-of-band regenerations

    int n() const { return static_cast<int>(a.rows()); }
};

struct EnsembleSpec {
    Kind kind = Kind::non_hermitian;
    int n = 32;
    double kappa_target = 0.0;  // dense kinds
    double band_lo = 0.0;       // sparse kind
    double band_hi = 0.0;
    double density = 0.0;       // sparse kind
    int count = 100;
    std::uint64_t base_seed = 0;
};

/// Dense instance: i.i.d. uniform-[0,2] entries, SVD, singular values
/// affinely rescaled onto [1/kappa, 1] so sigma_max/sigma_min = kappa
/// exactly. NonHermitian keeps U S' V^T; PositiveDefinite uses V S' V^T.
ProblemInstance generate_dense(Kind kind, int n, double kappa, std::uint64_t seed);

/// Sparse PDE-like instance: noisy tridiagonal stencil plus optional random
/// off-stencil entries, rescaled to unit spectral norm, rejection-sampled
/// (cap 1000 attempts) until the measured kappa lands in [band_lo, band_hi].
/// Throws BandInfeasibleError with the attempt histogram when the cap hits.
ProblemInstance generate_sparse(int n, double density, std::uint64_t seed,
                                double band_lo, double band_hi);

/// Unit-norm right-hand side with i.i.d. standard normal direction.
Vector generate_rhs(int n, std::uint64_t seed);

/// count instances with per-instance seed derive_seed(base_seed, i).
/// Deterministic regardless of execution order.
std::vector<ProblemInstance> generate_ensemble(const EnsembleSpec& spec,
                                               ExecMode mode = default_mode());

struct Ensemble {
    EnsembleSpec spec;
    std::vector<ProblemInstance> instances;
};

void save_ensemble(const Ensemble& ensemble, const std::string& path);
Ensemble load_ensemble(const std::string& path);

/// CSV of (id, kappa_measured, nnz), one row per instance.
void export_kappa_csv(const std::vector<ProblemInstance>& instances,
                      const std::string& path);

int nonzero_count(const Matrix& m);

}  // namespace qlspb
