#pragma once

#include <functional>
#include <vector>

namespace qlspb {

/// Abscissas and weights of the practical (closed, endpoint-including)
/// Clenshaw-Curtis rule, rescaled to [lo, hi]. Canonical [-1, 1] tables are
/// cached per node count. Requires nodes >= 2 and lo < hi.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
};

QuadratureRule clenshaw_curtis_rule(int nodes, double lo, double hi);

/// Integrates f over [lo, hi] with the rule above. Throws EvaluationError,
/// naming the node, if f returns a non-finite value.
double clenshaw_curtis(const std::function<double(double)>& f, double lo, double hi,
                       int nodes);

}  // namespace qlspb
