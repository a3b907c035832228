#include "subfinsler/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "subfinsler/errors.hpp"

namespace subfinsler {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Evaluate P_n and P_n' by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Recompute derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 64) throw validation_error("gauss_legendre order out of range [1, 64]");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int cells, int nodes) {
    const GaussRule& rule = gauss_legendre(nodes);
    double total = 0.0;
    double hw = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        double lo = a + c * hw;
        double mid = lo + 0.5 * hw, half = 0.5 * hw;
        double acc = 0.0;
        for (int i = 0; i < nodes; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += acc * half;
    }
    return total;
}

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, const QuadratureSpec& spec) {
    const GaussRule& rule = gauss_legendre(spec.nodes);
    double total = 0.0;
    double hx = (bx - ax) / spec.cells_x;
    double hy = (by - ay) / spec.cells_y;
    for (int cx = 0; cx < spec.cells_x; ++cx) {
        double midx = ax + (cx + 0.5) * hx, halfx = 0.5 * hx;
        for (int cy = 0; cy < spec.cells_y; ++cy) {
            double midy = ay + (cy + 0.5) * hy, halfy = 0.5 * hy;
            double acc = 0.0;
            for (int i = 0; i < spec.nodes; ++i) {
                double x = midx + halfx * rule.nodes[i];
                double inner = 0.0;
                for (int j = 0; j < spec.nodes; ++j)
                    inner += rule.weights[j] * f(x, midy + halfy * rule.nodes[j]);
                acc += rule.weights[i] * inner;
            }
            total += acc * halfx * halfy;
        }
    }
    return total;
}

}  // namespace subfinsler
