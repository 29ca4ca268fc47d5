#pragma once

namespace qlspb {

enum class FilterKind { kernel_projection, kernel_reflection };

/// Parameters of the Chebyshev filter pair: the projection polynomial F
/// suppresses singular values in [delta_tilde, 1] below eta while fixing
/// F(0) = 1; the reflection polynomial K maps the same band near -1 while
/// fixing K(0) = 1. The degree (2 * order) equals the number of calls to the
/// block encoding, which is the cost unit throughout.
struct FilterSpec {
    FilterKind kind;
    double delta_tilde;  // filter width, 1/kappa in the solver pipelines
    double eta;          // accuracy parameter in (0, 1]
    int order;           // l
    int degree;          // 2 * l
    bool order_overridden = false;

    static FilterSpec make(FilterKind kind, double delta_tilde, double eta);
    static FilterSpec with_order(FilterKind kind, double delta_tilde, double eta,
                                 int order);
};

/// ceil(ln(2/eta) / (2 delta_tilde)), at least 1. Values within 1e-9
/// (relative) of an integer round to it instead of spilling upward.
int order_for(double delta_tilde, double eta);

/// Chebyshev polynomial of the first kind. For |y| <= 1 uses the cosine
/// form; outside, the hyperbolic form. Throws NumericalError once the result
/// would overflow a double (use log_chebyshev_t there).
double chebyshev_t(int l, double y);

/// log(T_l(y)) for y >= 1.
double log_chebyshev_t(int l, double y);

/// Projection filter F at x in [-1, 1]. Lemma-grade guarantees preserved
/// numerically: |F| <= 1 on [-1, 1], |F| <= eta on [delta_tilde, 1],
/// F(0) = 1 exactly.
double eval_f(const FilterSpec& spec, double x);

/// Reflection polynomial K at x in [-1, 1]: K = (2F(x) - 1 + F_edge) /
/// (1 + F_edge). Guaranteed >= -1 in floating point, K(0) = 1 exactly.
double eval_k(const FilterSpec& spec, double x);

/// True filter value at the band edge, F(delta_tilde) = 1 / T_l(u(0)).
/// Always <= eta; the nominal eta is the looser bound used to pick the order.
double edge_value(const FilterSpec& spec);

}  // namespace qlspb
