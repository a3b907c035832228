#include "subfinsler/graph_surface.hpp"

#include <algorithm>
#include <cmath>

#include "subfinsler/errors.hpp"

namespace subfinsler {

IntrinsicGraph IntrinsicGraph::from_functions(std::string id, Domain2D dom,
                                              std::function<double(double, double)> u,
                                              std::function<double(double, double)> ux,
                                              std::function<double(double, double)> ut) {
    if (!(dom.x1 > dom.x0) || !(dom.t1 > dom.t0))
        throw validation_error("graph domain must have positive extent");
    IntrinsicGraph g;
    g.id_ = std::move(id);
    g.dom_ = dom;
    g.u_ = std::move(u);
    g.ux_ = std::move(ux);
    g.ut_ = std::move(ut);
    const int n = 17;
    double lip = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = dom.x0 + dom.width() * i / (n - 1);
            double t = dom.t0 + dom.height() * j / (n - 1);
            lip = std::max(lip, std::max(std::abs(g.ux_(x, t)), std::abs(g.ut_(x, t))));
        }
    g.lipschitz_ = lip;
    return g;
}

namespace graphs {

IntrinsicGraph zero(Domain2D dom) {
    auto z = [](double, double) { return 0.0; };
    return IntrinsicGraph::from_functions("zero", dom, z, z, z);
}

IntrinsicGraph affine(double a, double b, Domain2D dom) {
    return IntrinsicGraph::from_functions(
        "affine", dom, [a, b](double x, double) { return 0.5 * a + b * x; },
        [b](double, double) { return b; }, [](double, double) { return 0.0; });
}

IntrinsicGraph xt_over_1px2(Domain2D dom) {
    return IntrinsicGraph::from_functions(
        "xt_over_1px2", dom,
        [](double x, double t) { return x * t / (1.0 + x * x); },
        [](double x, double t) {
            double d = 1.0 + x * x;
            return t * (1.0 - x * x) / (d * d);
        },
        [](double x, double) { return x / (1.0 + x * x); });
}

IntrinsicGraph poly(const std::vector<std::vector<double>>& coeffs, Domain2D dom) {
    if (coeffs.empty()) throw validation_error("poly graph needs coefficients");
    auto eval = [coeffs](double x, double t, int dx_order, int dt_order) {
        double acc = 0.0;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            for (size_t j = 0; j < coeffs[i].size(); ++j) {
                double c = coeffs[i][j];
                if (c == 0.0) continue;
                double fac = 1.0;
                int ei = static_cast<int>(i), ej = static_cast<int>(j);
                if (dx_order) {
                    if (ei == 0) continue;
                    fac *= ei;
                    ei -= 1;
                }
                if (dt_order) {
                    if (ej == 0) continue;
                    fac *= ej;
                    ej -= 1;
                }
                acc += c * fac * std::pow(x, ei) * std::pow(t, ej);
            }
        }
        return acc;
    };
    return IntrinsicGraph::from_functions(
        "poly", dom, [eval](double x, double t) { return eval(x, t, 0, 0); },
        [eval](double x, double t) { return eval(x, t, 1, 0); },
        [eval](double x, double t) { return eval(x, t, 0, 1); });
}

IntrinsicGraph from_grid(const GridData& grid) {
    if (grid.nx < 3 || grid.nt < 3)
        throw validation_error("grid graph needs at least 3 samples per axis");
    if (grid.values.size() != static_cast<size_t>(grid.nx) * grid.nt)
        throw validation_error("grid graph values size mismatch");

    const int nx = grid.nx, nt = grid.nt;
    const Domain2D dom = grid.dom;
    const double hx = dom.width() / (nx - 1);
    const double ht = dom.height() / (nt - 1);
    auto vals = std::make_shared<std::vector<double>>(grid.values);

    // Central differences inside, one-sided at the boundary.
    auto dx_grid = std::make_shared<std::vector<double>>(vals->size());
    auto dt_grid = std::make_shared<std::vector<double>>(vals->size());
    auto at = [&](int i, int j) { return (*vals)[i * nt + j]; };
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nt; ++j) {
            double dx;
            if (i == 0) dx = (at(1, j) - at(0, j)) / hx;
            else if (i == nx - 1) dx = (at(nx - 1, j) - at(nx - 2, j)) / hx;
            else dx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * hx);
            double dt;
            if (j == 0) dt = (at(i, 1) - at(i, 0)) / ht;
            else if (j == nt - 1) dt = (at(i, nt - 1) - at(i, nt - 2)) / ht;
            else dt = (at(i, j + 1) - at(i, j - 1)) / (2.0 * ht);
            (*dx_grid)[i * nt + j] = dx;
            (*dt_grid)[i * nt + j] = dt;
        }
    }

    auto interp = [dom, nx, nt, hx, ht](const std::shared_ptr<std::vector<double>>& g,
                                        double x, double t) {
        double fx = std::clamp((x - dom.x0) / hx, 0.0, double(nx - 1));
        double ft = std::clamp((t - dom.t0) / ht, 0.0, double(nt - 1));
        int i = std::min(static_cast<int>(fx), nx - 2);
        int j = std::min(static_cast<int>(ft), nt - 2);
        double ax = fx - i, bt = ft - j;
        const std::vector<double>& v = *g;
        return (1 - ax) * (1 - bt) * v[i * nt + j] + ax * (1 - bt) * v[(i + 1) * nt + j] +
               (1 - ax) * bt * v[i * nt + j + 1] + ax * bt * v[(i + 1) * nt + j + 1];
    };

    return IntrinsicGraph::from_functions(
        "grid", dom, [interp, vals](double x, double t) { return interp(vals, x, t); },
        [interp, dx_grid](double x, double t) { return interp(dx_grid, x, t); },
        [interp, dt_grid](double x, double t) { return interp(dt_grid, x, t); });
}

}  // namespace graphs

HPoint embed(const IntrinsicGraph& g, double x, double t) {
    double u = g.u(x, t);
    return {x, u, t - x * u};
}

CoordVector embed_dx(const IntrinsicGraph& g, double x, double t) {
    double u = g.u(x, t), ux = g.ux(x, t);
    return {1.0, ux, -u - x * ux};
}

CoordVector embed_dt(const IntrinsicGraph& g, double x, double t) {
    double ut = g.ut(x, t);
    return {0.0, ut, 1.0 - x * ut};
}

SurfaceFrame surface_frame(const IntrinsicGraph& g, double x, double t) {
    SurfaceFrame f;
    f.ut = g.ut(x, t);
    f.p = g.shift_p(x, t);
    double lam2 = 1.0 + f.p * f.p;
    double lam = std::sqrt(lam2);
    f.jac = std::sqrt(lam2 + f.ut * f.ut);
    f.N = FrameVector{f.p / f.jac, -1.0 / f.jac, f.ut / f.jac};
    f.Nh = PlaneVector{f.N.x, f.N.y};
    f.norm_Nh = lam / f.jac;
    f.N_dot_T = f.ut / f.jac;
    f.nu = PlaneVector{f.p / lam, -1.0 / lam};
    f.Z = PlaneVector{-1.0 / lam, -f.p / lam};  // -J(nu)
    f.E = FrameVector{f.N_dot_T * f.nu.x, f.N_dot_T * f.nu.y, -f.norm_Nh};
    return f;
}

double area_element(const IntrinsicGraph& g, double x, double t) {
    double p = g.shift_p(x, t);
    return std::sqrt(1.0 + p * p);
}

double subfinsler_area(const IntrinsicGraph& g, const ConvexBody& body,
                       const QuadratureSpec& quad) {
    const Domain2D& d = g.domain();
    double val = integrate_2d(
        [&](double x, double t) {
            return body.dual_norm(PlaneVector{g.shift_p(x, t), -1.0});
        },
        d.x0, d.x1, d.t0, d.t1, quad);
    if (!std::isfinite(val)) throw numerical_error("area quadrature produced a non-finite value");
    return val;
}

double characteristic_step(const IntrinsicGraph& g, double x, double t, double dx) {
    double k1 = 2.0 * g.u(x, t);
    double k2 = 2.0 * g.u(x + 0.5 * dx, t + 0.5 * dx * k1);
    double k3 = 2.0 * g.u(x + 0.5 * dx, t + 0.5 * dx * k2);
    double k4 = 2.0 * g.u(x + dx, t + dx * k3);
    return t + dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double z_derivative(const IntrinsicGraph& g, const std::function<double(double, double)>& f,
                    double x, double t, double step) {
    double lam = std::sqrt(1.0 + std::pow(g.shift_p(x, t), 2));
    double tp = characteristic_step(g, x, t, step);
    double tm = characteristic_step(g, x, t, -step);
    // Z points against increasing x along the characteristic.
    return -(f(x + step, tp) - f(x - step, tm)) / (2.0 * step * lam);
}

// In-domain direction (dx, dt) whose embedded velocity is E.
static void e_direction(const IntrinsicGraph& g, double x, double t, double* dx, double* dt) {
    SurfaceFrame f = surface_frame(g, x, t);
    double alpha = f.N_dot_T * f.nu.x;
    double beta = -f.norm_Nh + 2.0 * g.u(x, t) * alpha;
    *dx = alpha;
    *dt = beta;
}

double e_derivative(const IntrinsicGraph& g, const std::function<double(double, double)>& f,
                    double x, double t, double step) {
    double dx, dt;
    e_direction(g, x, t, &dx, &dt);
    return (f(x + step * dx, t + step * dt) - f(x - step * dx, t - step * dt)) / (2.0 * step);
}

double tilt_ratio(const IntrinsicGraph& g, double x, double t) {
    double p = g.shift_p(x, t);
    return g.ut(x, t) / std::sqrt(1.0 + p * p);
}

double mean_curvature(const IntrinsicGraph& g, const ConvexBody& body, double x, double t,
                      double step) {
    double p0 = g.shift_p(x, t);
    double tp = characteristic_step(g, x, t, step);
    double tm = characteristic_step(g, x, t, -step);
    PlaneVector wp = body.pi(PlaneVector{g.shift_p(x + step, tp), -1.0});
    PlaneVector wm = body.pi(PlaneVector{g.shift_p(x - step, tm), -1.0});
    double d1 = (wp.x - wm.x) / (2.0 * step);
    double d2 = (wp.y - wm.y) / (2.0 * step);
    return (d1 + p0 * d2) / (1.0 + p0 * p0);
}

double theta_Z(const IntrinsicGraph& g, double x, double t, double step) {
    double p0 = g.shift_p(x, t);
    double tp = characteristic_step(g, x, t, step);
    double tm = characteristic_step(g, x, t, -step);
    auto nu_at = [&](double xx, double tt) {
        double p = g.shift_p(xx, tt);
        double lam = std::sqrt(1.0 + p * p);
        return PlaneVector{p / lam, -1.0 / lam};
    };
    PlaneVector np = nu_at(x + step, tp), nm = nu_at(x - step, tm);
    double d1 = (np.x - nm.x) / (2.0 * step);
    double d2 = (np.y - nm.y) / (2.0 * step);
    return (d1 + p0 * d2) / (1.0 + p0 * p0);
}

double theta_E(const IntrinsicGraph& g, double x, double t, double step) {
    double dx, dt;
    e_direction(g, x, t, &dx, &dt);
    auto nu_at = [&](double xx, double tt) {
        double p = g.shift_p(xx, tt);
        double lam = std::sqrt(1.0 + p * p);
        return PlaneVector{p / lam, -1.0 / lam};
    };
    PlaneVector np = nu_at(x + step * dx, t + step * dt);
    PlaneVector nm = nu_at(x - step * dx, t - step * dt);
    double d1 = (np.x - nm.x) / (2.0 * step);
    double d2 = (np.y - nm.y) / (2.0 * step);
    SurfaceFrame f = surface_frame(g, x, t);
    return d1 * f.Z.x + d2 * f.Z.y;
}

}  // namespace subfinsler
