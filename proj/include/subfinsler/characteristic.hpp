#pragma once

#include <functional>
#include <vector>

#include "subfinsler/graph_surface.hpp"

// Characteristic curves t' = 2u(s, t) of an intrinsic graph, checks that a
// graph is ruled by horizontal lines (constant shift, straight embedded
// image, quadratic t(s)), and construction of graphs from ruling data
// (eps, a(eps), b(eps)) via t = eps + a(eps) x + b(eps) x^2.

namespace subfinsler {

struct CharacteristicCurve {
    double eps = 0.0;       // t at the start abscissa
    double x_start = 0.0;   // abscissa the integration starts from
    std::vector<double> s;  // offsets from x_start, strictly increasing
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> p;
};

// Fixed-step RK4 of t' = 2u from (x_start, eps), both directions, clipped to
// the graph domain.  s_min <= 0 <= s_max are offsets from x_start.
CharacteristicCurve integrate_characteristic(const IntrinsicGraph& g, double eps,
                                             double s_min, double s_max, double step = 1e-3,
                                             double x_start = 0.0);

// max over a grid of characteristics of (max p - min p) along each curve.
double stationarity_residual(const IntrinsicGraph& g, int n_eps = 9, double step = 1e-3);

// min over adjacent characteristics and shared offsets of dt/deps; positive
// values certify that the curves foliate the strip without crossing.
double monotonicity_min(const IntrinsicGraph& g, int n_eps = 17, double step = 1e-3);

struct LineCheck {
    double max_line_distance = 0.0;  // distance to the least-squares 3-d line
    double max_contact = 0.0;        // |omega(velocity)| / |velocity| along the curve
};

// Checks that the embedded characteristic is a straight horizontal line.
LineCheck line_check(const IntrinsicGraph& g, const CharacteristicCurve& curve);

struct QuadraticFit {
    double eps0 = 0.0, a = 0.0, b = 0.0;  // t(s) ~ eps0 + a s + b s^2
    double max_residual = 0.0;
};

QuadraticFit fit_quadratic(const CharacteristicCurve& curve);

// Ruling of a stationary graph: t_eps(s) = eps + a(eps) s + b(eps) s^2 with
// u = a(eps)/2 + b(eps) s along the line through (0, eps).
class RulingData {
public:
    // Sampled ruling on a strictly increasing eps grid; evaluation uses
    // piecewise-cubic Hermite interpolation with central-difference slopes.
    static RulingData from_samples(std::vector<double> eps, std::vector<double> a,
                                   std::vector<double> b);
    static RulingData from_functions(double eps_lo, double eps_hi,
                                     std::function<double(double)> a,
                                     std::function<double(double)> b,
                                     std::function<double(double)> da,
                                     std::function<double(double)> db);

    double a(double eps) const;
    double b(double eps) const;
    double da(double eps) const;
    double db(double eps) const;
    double eps_lo() const { return eps_lo_; }
    double eps_hi() const { return eps_hi_; }

    // Samples for serialization (present when built from samples; function
    // rulings expose a uniform resampling).
    std::vector<double> eps_samples(int fallback_n = 33) const;

private:
    RulingData() = default;
    double eps_lo_ = 0.0, eps_hi_ = 0.0;
    std::function<double(double)> a_, b_, da_, db_;
    std::vector<double> eps_grid_;
};

// t-coordinate of the line eps at offset x from the axis.
inline double ruling_t(const RulingData& r, double eps, double x) {
    return eps + r.a(eps) * x + r.b(eps) * x * x;
}

// Inverts eps + a(eps) x + b(eps) x^2 = t for eps.  Newton iteration with a
// bisection fallback; requires the map to be increasing in eps (checked by
// build_ruled_graph up front).
double epsilon_of(const RulingData& r, double x, double t, double tol = 1e-12);

// Stationary graph whose characteristics realize the ruling.  Validates
// monotonicity of eps -> t and coverage of the domain by the eps range.
IntrinsicGraph build_ruled_graph(const RulingData& r, Domain2D dom);

// Samples a(eps) = 2 u(0, eps), b(eps) = p(0, eps) from a graph whose domain
// contains the axis x = 0.
RulingData extract_ruling(const IntrinsicGraph& g, double eps_lo, double eps_hi, int n = 33);

}  // namespace subfinsler
