#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "subfinsler/convex_body.hpp"
#include "subfinsler/heisenberg.hpp"
#include "subfinsler/quadrature.hpp"

// Intrinsic graphs over the vertical plane {y = 0}: the surface through
// (x, u(x,t), t - x u(x,t)), its frame data (normal, horizontal unit normal,
// characteristic direction Z, tangent E), the area integrand induced by a
// convex body, and directional derivatives along Z and E.

namespace subfinsler {

struct Domain2D {
    double x0 = 0.0, x1 = 1.0;
    double t0 = 0.0, t1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return t1 - t0; }
    bool contains(double x, double t, double pad = 0.0) const {
        return x >= x0 + pad && x <= x1 - pad && t >= t0 + pad && t <= t1 - pad;
    }
};

class IntrinsicGraph {
public:
    IntrinsicGraph() = default;

    static IntrinsicGraph from_functions(std::string id, Domain2D dom,
                                         std::function<double(double, double)> u,
                                         std::function<double(double, double)> ux,
                                         std::function<double(double, double)> ut);

    double u(double x, double t) const { return u_(x, t); }
    double ux(double x, double t) const { return ux_(x, t); }
    double ut(double x, double t) const { return ut_(x, t); }

    // p = u_x + 2 u u_t, the slope of the horizontal direction in the graph.
    double shift_p(double x, double t) const {
        return ux_(x, t) + 2.0 * u_(x, t) * ut_(x, t);
    }

    const Domain2D& domain() const { return dom_; }
    const std::string& id() const { return id_; }

    // max of (|u_x|, |u_t|) sampled over the domain at construction.
    double lipschitz_bound() const { return lipschitz_; }

private:
    std::string id_;
    Domain2D dom_;
    std::function<double(double, double)> u_, ux_, ut_;
    double lipschitz_ = 0.0;
};

namespace graphs {

IntrinsicGraph zero(Domain2D dom);
// u = a/2 + b x: plane ruled by the lines t = eps + a s + b s^2.
IntrinsicGraph affine(double a, double b, Domain2D dom);
// u = x t / (1 + x^2): ruled by t = eps (1 + x^2).
IntrinsicGraph xt_over_1px2(Domain2D dom);
// u = sum_{i,j} coeffs[i][j] x^i t^j.
IntrinsicGraph poly(const std::vector<std::vector<double>>& coeffs, Domain2D dom);

struct GridData {
    Domain2D dom;
    int nx = 0, nt = 0;
    std::vector<double> values;  // row-major: values[i*nt + j] = u(x_i, t_j)
};

// Bilinear interpolation of the samples; derivatives interpolate grids of
// central differences (one-sided at the boundary).
IntrinsicGraph from_grid(const GridData& grid);

}  // namespace graphs

// Frame data of the graph at a parameter point.
struct SurfaceFrame {
    double p = 0.0;        // shift u_x + 2 u u_t
    double ut = 0.0;
    double jac = 1.0;      // Riemannian area Jacobian sqrt(1 + p^2 + u_t^2)
    FrameVector N;         // unit normal with negative Y coefficient
    PlaneVector Nh;        // horizontal part of N
    double norm_Nh = 1.0;  // |N_h|
    double N_dot_T = 0.0;  // <N, T>
    PlaneVector nu;        // horizontal unit normal N_h / |N_h|
    PlaneVector Z;         // characteristic direction -J(nu)
    FrameVector E;         // <N,T> nu - |N_h| T, unit tangent
};

HPoint embed(const IntrinsicGraph& g, double x, double t);
CoordVector embed_dx(const IntrinsicGraph& g, double x, double t);
CoordVector embed_dt(const IntrinsicGraph& g, double x, double t);

SurfaceFrame surface_frame(const IntrinsicGraph& g, double x, double t);

// Density of the horizontal-area measure in graph coordinates: |N_h| dS =
// sqrt(1 + p^2) dx dt.
double area_element(const IntrinsicGraph& g, double x, double t);

// integral over the domain of ||(p, -1)||_{K,*} dx dt.
double subfinsler_area(const IntrinsicGraph& g, const ConvexBody& body,
                       const QuadratureSpec& quad = {});

// t-coordinate after one step of dt/dx = 2u from (x, t) to x + dx (RK4).
double characteristic_step(const IntrinsicGraph& g, double x, double t, double dx);

// Z(f) for a scalar f(x,t): derivative along the characteristic direction,
// computed by a central difference of half-width `step` in x.
double z_derivative(const IntrinsicGraph& g, const std::function<double(double, double)>& f,
                    double x, double t, double step = 1e-5);

// E(f): derivative along the tangent E, stepping in the parameter domain.
double e_derivative(const IntrinsicGraph& g, const std::function<double(double, double)>& f,
                    double x, double t, double step = 1e-5);

// <N,T>/|N_h| = u_t / sqrt(1 + p^2).
double tilt_ratio(const IntrinsicGraph& g, double x, double t);

// Mean curvature against the body: <D_Z pi(nu), Z>, finite-differenced along
// the characteristic through (x, t).
double mean_curvature(const IntrinsicGraph& g, const ConvexBody& body, double x, double t,
                      double step = 1e-5);

// theta(W) = <D_W nu, Z> for W = Z and W = E.
double theta_Z(const IntrinsicGraph& g, double x, double t, double step = 1e-5);
double theta_E(const IntrinsicGraph& g, double x, double t, double step = 1e-5);

}  // namespace subfinsler
