#include "qlspb/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "qlspb/errors.hpp"

namespace qlspb {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Closed Clenshaw-Curtis weights on [-1, 1] by the cosine-sum formula.
QuadratureRule canonical_rule(int nodes) {
    const int n = nodes - 1;
    QuadratureRule rule;
    rule.points.resize(nodes);
    rule.weights.resize(nodes);
    for (int k = 0; k <= n; ++k) {
        const double theta = kPi * static_cast<double>(k) / n;
        // Ascending abscissas: cos runs from 1 down to -1 as k grows.
        rule.points[n - k] = std::cos(theta);
        double sum = 0.0;
        for (int j = 1; j <= n / 2; ++j) {
            const double bj = (2 * j == n) ? 1.0 : 2.0;
            sum += bj * std::cos(2.0 * j * theta) / (4.0 * j * j - 1.0);
        }
        const double ck = (k == 0 || k == n) ? 1.0 : 2.0;
        rule.weights[n - k] = ck / n * (1.0 - sum);
    }
    return rule;
}

const QuadratureRule& cached_rule(int nodes) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
        it = cache.emplace(nodes, canonical_rule(nodes)).first;
    }
    return it->second;
}

}  // namespace

QuadratureRule clenshaw_curtis_rule(int nodes, double lo, double hi) {
    if (nodes < 2) throw DomainError("clenshaw_curtis: needs at least 2 nodes");
    if (!(lo < hi)) throw DomainError("clenshaw_curtis: requires lo < hi");
    const QuadratureRule& base = cached_rule(nodes);
    QuadratureRule rule = base;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int i = 0; i < nodes; ++i) {
        rule.points[i] = mid + half * base.points[i];
        rule.weights[i] = half * base.weights[i];
    }
    // Pin the endpoints exactly; rounding in mid +/- half may miss them.
    rule.points.front() = lo;
    rule.points.back() = hi;
    return rule;
}

double clenshaw_curtis(const std::function<double(double)>& f, double lo, double hi,
                       int nodes) {
    QuadratureRule rule = clenshaw_curtis_rule(nodes, lo, hi);
    double total = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double value = f(rule.points[i]);
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "clenshaw_curtis: non-finite integrand at node " << i << " (x = "
                << rule.points[i] << ")";
            throw EvaluationError(msg.str());
        }
        total += rule.weights[i] * value;
    }
    return total;
}

}  // namespace qlspb
