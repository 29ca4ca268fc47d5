#include "qlspb/filter_poly.hpp"

#include <cmath>

#include "qlspb/errors.hpp"

namespace qlspb {

namespace {

// Beyond this the cosh ratio is formed in log space. Well below overflow,
// where exp is still exact enough for direct evaluation.
constexpr double kLogSpaceSwitch = 30.0;

void check_band_params(double delta_tilde, double eta) {
    if (!(delta_tilde > 0.0 && delta_tilde < 1.0)) {
        throw DomainError("filter: delta_tilde must lie in (0, 1)");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw DomainError("filter: eta must lie in (0, 1]");
    }
}

// Shifted coordinate for the Chebyshev argument: u(x) = 1 - 2 s(x) with
// s = (x^2 - d^2) / (1 - d^2). s < 0 is the hyperbolic (inner) region,
// s >= 0 the oscillatory band. Using s directly avoids the cancellation in
// acos/acosh near u = +-1.
double shifted(double x, double d) {
    return (x - d) * (x + d) / ((1.0 - d) * (1.0 + d));
}

// l * acosh(u(x)) for the inner region, via acosh(1 + 2|s|) = 2 asinh(sqrt|s|).
double scaled_acosh(int l, double s) {
    return 2.0 * l * std::asinh(std::sqrt(-s));
}

// l * acos(u(x)) for the band, via acos(1 - 2s) = 2 asin(sqrt s).
double scaled_acos(int l, double s) {
    return 2.0 * l * std::asin(std::sqrt(std::min(1.0, s)));
}

double log_cosh(double t) {
    // t >= 0
    return t + std::log1p(std::exp(-2.0 * t)) - 0.6931471805599453094172321214581766;
}

double inv_cosh(double t) {
    if (t <= kLogSpaceSwitch) return 1.0 / std::cosh(t);
    return 2.0 * std::exp(-t) / (1.0 + std::exp(-2.0 * t));
}

}  // namespace

int order_for(double delta_tilde, double eta) {
    check_band_params(delta_tilde, eta);
    const double raw = std::log(2.0 / eta) / (2.0 * delta_tilde);
    const double nearest = std::nearbyint(raw);
    double value;
    if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, std::abs(raw))) {
        value = nearest;
    } else {
        value = std::ceil(raw);
    }
    return std::max(1, static_cast<int>(value));
}

FilterSpec FilterSpec::make(FilterKind kind, double delta_tilde, double eta) {
    const int l = order_for(delta_tilde, eta);
    return FilterSpec{kind, delta_tilde, eta, l, 2 * l, false};
}

FilterSpec FilterSpec::with_order(FilterKind kind, double delta_tilde, double eta,
                                  int order) {
    check_band_params(delta_tilde, eta);
    if (order < 1) throw DomainError("filter: order must be >= 1");
    return FilterSpec{kind, delta_tilde, eta, order, 2 * order, true};
}

double chebyshev_t(int l, double y) {
    if (l < 0) throw DomainError("chebyshev_t: negative order");
    if (!std::isfinite(y)) throw DomainError("chebyshev_t: non-finite argument");
    if (std::abs(y) <= 1.0) {
        return std::cos(l * std::acos(y));
    }
    const double t = l * std::acosh(std::abs(y));
    if (t > 700.0) {
        throw NumericalError("chebyshev_t: overflow; use log_chebyshev_t");
    }
    const double mag = std::cosh(t);
    return (y < 0.0 && (l % 2 == 1)) ? -mag : mag;
}

double log_chebyshev_t(int l, double y) {
    if (l < 0) throw DomainError("log_chebyshev_t: negative order");
    if (!(y >= 1.0)) throw DomainError("log_chebyshev_t: requires y >= 1");
    return log_cosh(l * std::acosh(y));
}

double edge_value(const FilterSpec& spec) {
    const double s0 = shifted(0.0, spec.delta_tilde);
    return inv_cosh(scaled_acosh(spec.order, s0));
}

double eval_f(const FilterSpec& spec, double x) {
    if (!(x >= -1.0 && x <= 1.0)) {
        throw DomainError("eval_f: x must lie in [-1, 1]");
    }
    const double d = spec.delta_tilde;
    const int l = spec.order;
    const double s = shifted(x, d);
    const double lb = scaled_acosh(l, shifted(0.0, d));
    if (s < 0.0) {
        // Inner region: ratio of two cosh values, both arguments <= lb.
        // At x = 0 both arguments coincide bit for bit, so F(0) = 1 exactly.
        const double la = scaled_acosh(l, s);
        if (lb <= kLogSpaceSwitch) {
            return std::cosh(la) / std::cosh(lb);
        }
        return std::exp(la - lb) * (1.0 + std::exp(-2.0 * la)) /
               (1.0 + std::exp(-2.0 * lb));
    }
    // Band: |cos| <= 1 times the edge value keeps |F| <= F(edge) exactly.
    return std::cos(scaled_acos(l, s)) * inv_cosh(lb);
}

double eval_k(const FilterSpec& spec, double x) {
    const double f_edge = edge_value(spec);
    const double f = eval_f(spec, x);
    // Rearranged as -1 + 2 (F + F_edge) / (1 + F_edge): since |F| never
    // exceeds F_edge on the band, the numerator cannot go negative and the
    // reflection never undershoots -1, even in floating point.
    return -1.0 + 2.0 * (f + f_edge) / (1.0 + f_edge);
}

}  // namespace qlspb
