#include "qlspb/instances.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qlspb/errors.hpp"
#include "qlspb/rng.hpp"

namespace qlspb {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kMaxDegenerateRetries = 64;
constexpr int kMaxBandAttempts = 1000;

// Stencil noise amplitudes for the sparse generator. Not published with the
// reference tables; these land the documented kappa bands at n = 32 and 64.
constexpr double kDiagNoise = 0.1;
constexpr double kOffDiagNoise = 0.1;
constexpr double kPerturbAmplitude = 0.5;

std::string default_id(Kind kind, int n, std::uint64_t seed) {
    std::ostringstream out;
    out << kind_name(kind) << n << "-" << std::hex << seed;
    return out.str();
}

Matrix uniform_matrix(int n, CounterRng& rng) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = rng.uniform(0.0, 2.0);
        }
    }
    return m;
}

}  // namespace

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::non_hermitian: return "non_hermitian";
        case Kind::positive_definite: return "positive_definite";
        case Kind::sparse: return "sparse";
    }
    throw DomainError("kind_name: unknown kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "non_hermitian" || name == "nh") return Kind::non_hermitian;
    if (name == "positive_definite" || name == "pd") return Kind::positive_definite;
    if (name == "sparse") return Kind::sparse;
    throw DomainError("unknown instance kind: " + name);
}

Vector generate_rhs(int n, std::uint64_t seed) {
    if (n < 1) throw DomainError("generate_rhs: n must be >= 1");
    CounterRng rng(seed);
    Vector b(n);
    for (int i = 0; i < n; ++i) b(i) = rng.normal();
    const double norm = b.norm();
    if (norm == 0.0) {
        b.setZero();
        b(0) = 1.0;
        return b;
    }
    return b / norm;
}

ProblemInstance generate_dense(Kind kind, int n, double kappa, std::uint64_t seed) {
    if (kind != Kind::non_hermitian && kind != Kind::positive_definite) {
        throw DomainError("generate_dense: kind must be dense");
    }
    if (n < 2) throw DomainError("generate_dense: n must be >= 2");
    if (!(kappa >= 1.0 + 1e-8)) {
        throw DomainError("generate_dense: kappa too close to 1");
    }

    for (int attempt = 0; attempt <= kMaxDegenerateRetries; ++attempt) {
        const std::uint64_t attempt_seed =
            attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt));
        CounterRng rng(attempt_seed);
        SvdFactors f = svd(uniform_matrix(n, rng));
        const double smax = f.sigma(0);
        const double smin = f.sigma(n - 1);
        if (smax - smin <= 1e-12 * smax) continue;  // degenerate draw

        // Affine rescale anchored to [1/kappa, 1]: spectral norm 1 and the
        // target condition number hold by construction.
        const double scale = (1.0 - 1.0 / kappa) / (smax - smin);
        Vector sigma_new(n);
        for (int i = 0; i < n; ++i) {
            sigma_new(i) = 1.0 / kappa + (f.sigma(i) - smin) * scale;
        }
        Matrix a;
        if (kind == Kind::non_hermitian) {
            a = f.left * sigma_new.asDiagonal() * f.right.transpose();
        } else {
            a = f.right * sigma_new.asDiagonal() * f.right.transpose();
        }

        ProblemInstance inst;
        inst.id = default_id(kind, n, seed);
        inst.kind = kind;
        inst.a = std::move(a);
        inst.b = generate_rhs(n, derive_seed(attempt_seed, 1));
        inst.kappa_target = kappa;
        inst.kappa_measured = condition_number(inst.a);
        inst.seed = seed;
        inst.retries = attempt;
        return inst;
    }
    throw NumericalError("generate_dense: repeated degenerate singular spectra");
}

ProblemInstance generate_sparse(int n, double density, std::uint64_t seed,
                                double band_lo, double band_hi) {
    if (n < 3) throw DomainError("generate_sparse: n must be >= 3");
    if (!(density >= 0.0 && density <= 0.2)) {
        throw DomainError("generate_sparse: density must lie in [0, 0.2]");
    }
    if (!(band_lo >= 1.0 && band_hi > band_lo)) {
        throw DomainError("generate_sparse: invalid kappa band");
    }

    std::vector<double> attempt_kappas;
    for (int attempt = 0; attempt < kMaxBandAttempts; ++attempt) {
        const std::uint64_t attempt_seed =
            attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt));
        CounterRng rng(attempt_seed);

        Matrix a = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            a(i, i) = 2.0 * (1.0 + rng.uniform(-kDiagNoise, kDiagNoise));
        }
        for (int i = 0; i + 1 < n; ++i) {
            a(i, i + 1) = -(1.0 + rng.uniform(-kOffDiagNoise, kOffDiagNoise));
        }
        for (int i = 0; i + 1 < n; ++i) {
            a(i + 1, i) = -(1.0 + rng.uniform(-kOffDiagNoise, kOffDiagNoise));
        }

        const int extras = static_cast<int>(std::lround(density * n * n));
        std::set<std::pair<int, int>> used;
        int placed = 0;
        while (placed < extras) {
            const int i = static_cast<int>(rng.next_u64() % n);
            const int j = static_cast<int>(rng.next_u64() % n);
            if (std::abs(i - j) <= 1) continue;  // keep the stencil intact
            if (!used.insert({i, j}).second) continue;
            a(i, j) = rng.uniform(-kPerturbAmplitude, kPerturbAmplitude);
            ++placed;
        }

        SvdFactors f = svd(a);
        a /= f.sigma(0);
        const double kappa = f.sigma(0) / f.sigma(n - 1);
        attempt_kappas.push_back(kappa);
        if (kappa >= band_lo && kappa <= band_hi) {
            ProblemInstance inst;
            inst.id = default_id(Kind::sparse, n, seed);
            inst.kind = Kind::sparse;
            inst.a = std::move(a);
            inst.b = generate_rhs(n, derive_seed(attempt_seed, 1));
            inst.band_lo = band_lo;
            inst.band_hi = band_hi;
            inst.density = density;
            inst.kappa_measured = kappa;
            inst.seed = seed;
            inst.retries = attempt;
            return inst;
        }
    }
    std::ostringstream msg;
    msg << "generate_sparse: no instance in kappa band [" << band_lo << ", " << band_hi
        << "] after " << kMaxBandAttempts << " attempts";
    throw BandInfeasibleError(msg.str(), std::move(attempt_kappas));
}

std::vector<ProblemInstance> generate_ensemble(const EnsembleSpec& spec, ExecMode mode) {
    if (spec.count < 1) throw DomainError("generate_ensemble: count must be >= 1");
    std::vector<ProblemInstance> out(spec.count);
    for_each_index(static_cast<std::size_t>(spec.count), mode, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(spec.base_seed, i);
        ProblemInstance inst;
        if (spec.kind == Kind::sparse) {
            inst = generate_sparse(spec.n, spec.density, seed, spec.band_lo, spec.band_hi);
        } else {
            inst = generate_dense(spec.kind, spec.n, spec.kappa_target, seed);
        }
        std::ostringstream id;
        id << kind_name(spec.kind) << spec.n << "-" << i;
        inst.id = id.str();
        out[i] = std::move(inst);
    });
    return out;
}

namespace {

ordered_json kappa_spec_json(const EnsembleSpec& spec) {
    ordered_json j;
    if (spec.kind == Kind::sparse) {
        j["band"] = {spec.band_lo, spec.band_hi};
        j["density"] = spec.density;
    } else {
        j["target"] = spec.kappa_target;
    }
    return j;
}

const ordered_json& require(const ordered_json& j, const char* key,
                            const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError("ensemble file: missing '" + std::string(key) + "' in " + where);
    }
    return *it;
}

}  // namespace

void save_ensemble(const Ensemble& ensemble, const std::string& path) {
    ordered_json root;
    root["format_version"] = 1;
    root["kind"] = kind_name(ensemble.spec.kind);
    root["n"] = ensemble.spec.n;
    root["kappa_spec"] = kappa_spec_json(ensemble.spec);
    root["count"] = ensemble.spec.count;
    root["base_seed"] = ensemble.spec.base_seed;
    ordered_json list = ordered_json::array();
    for (const ProblemInstance& inst : ensemble.instances) {
        ordered_json rec;
        rec["id"] = inst.id;
        rec["seed"] = inst.seed;
        rec["kappa_measured"] = inst.kappa_measured;
        std::vector<double> entries(static_cast<std::size_t>(inst.a.size()));
        for (int i = 0; i < inst.a.rows(); ++i) {
            for (int j = 0; j < inst.a.cols(); ++j) {
                entries[static_cast<std::size_t>(i) * inst.a.cols() + j] = inst.a(i, j);
            }
        }
        rec["entries"] = entries;
        rec["b"] = std::vector<double>(inst.b.data(), inst.b.data() + inst.b.size());
        list.push_back(std::move(rec));
    }
    root["instances"] = std::move(list);

    std::ofstream out(path);
    if (!out) throw ValidationError("save_ensemble: cannot open " + path);
    out << root.dump(1) << "\n";
}

Ensemble load_ensemble(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_ensemble: cannot open " + path);
    ordered_json root;
    try {
        in >> root;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("load_ensemble: invalid JSON: ") + e.what());
    }

    Ensemble ens;
    ens.spec.kind = kind_from_name(require(root, "kind", "header").get<std::string>());
    ens.spec.n = require(root, "n", "header").get<int>();
    const ordered_json& kspec = require(root, "kappa_spec", "header");
    if (ens.spec.kind == Kind::sparse) {
        const ordered_json& band = require(kspec, "band", "kappa_spec");
        ens.spec.band_lo = band.at(0).get<double>();
        ens.spec.band_hi = band.at(1).get<double>();
        ens.spec.density = require(kspec, "density", "kappa_spec").get<double>();
    } else {
        ens.spec.kappa_target = require(kspec, "target", "kappa_spec").get<double>();
    }
    ens.spec.count = require(root, "count", "header").get<int>();
    ens.spec.base_seed = require(root, "base_seed", "header").get<std::uint64_t>();

    const ordered_json& list = require(root, "instances", "body");
    const int n = ens.spec.n;
    int index = 0;
    for (const ordered_json& rec : list) {
        const std::string where = "instance " + std::to_string(index);
        ProblemInstance inst;
        inst.kind = ens.spec.kind;
        inst.id = require(rec, "id", where).get<std::string>();
        inst.seed = require(rec, "seed", where).get<std::uint64_t>();
        inst.kappa_measured = require(rec, "kappa_measured", where).get<double>();
        inst.kappa_target = ens.spec.kappa_target;
        inst.band_lo = ens.spec.band_lo;
        inst.band_hi = ens.spec.band_hi;
        inst.density = ens.spec.density;
        const auto entries = require(rec, "entries", where).get<std::vector<double>>();
        if (entries.size() != static_cast<std::size_t>(n) * n) {
            throw ParseError("load_ensemble: " + where + ": entries size mismatch");
        }
        inst.a.resize(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                inst.a(i, j) = entries[static_cast<std::size_t>(i) * n + j];
            }
        }
        const auto bvec = require(rec, "b", where).get<std::vector<double>>();
        if (bvec.size() != static_cast<std::size_t>(n)) {
            throw ParseError("load_ensemble: " + where + ": b size mismatch");
        }
        inst.b = Eigen::Map<const Vector>(bvec.data(), n);
        ens.instances.push_back(std::move(inst));
        ++index;
    }
    if (ens.instances.size() != static_cast<std::size_t>(ens.spec.count)) {
        throw ParseError("load_ensemble: instance count does not match header");
    }
    return ens;
}

int nonzero_count(const Matrix& m) {
    int count = 0;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0.0) ++count;
        }
    }
    return count;
}

void export_kappa_csv(const std::vector<ProblemInstance>& instances,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("export_kappa_csv: cannot open " + path);
    out << "id,kappa_measured,nnz\n";
    for (const ProblemInstance& inst : instances) {
        out << inst.id << "," << inst.kappa_measured << "," << nonzero_count(inst.a)
            << "\n";
    }
}

}  // namespace qlspb
