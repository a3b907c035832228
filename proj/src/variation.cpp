#include "subfinsler/variation.hpp"

#include <cmath>

#include "subfinsler/characteristic.hpp"
#include "subfinsler/errors.hpp"

namespace subfinsler {

VariationField VariationField::from_coeffs(std::function<FrameVector(double, double)> coeffs,
                                           Domain2D support) {
    VariationField f;
    f.coeffs_ = std::move(coeffs);
    f.support_ = support;
    return f;
}

namespace {

Domain2D bump_rect(const Bump2D& bump) {
    return {bump.bx.lo(), bump.bx.hi(), bump.by.lo(), bump.by.hi()};
}

}  // namespace

VariationField VariationField::surface_frame_field(const IntrinsicGraph& g, double uZ,
                                                   double uNu, double uT, const Bump2D& bump) {
    auto coeffs = [g, uZ, uNu, uT, bump](double x, double t) {
        double w = bump(x, t);
        if (w == 0.0) return FrameVector{0.0, 0.0, 0.0};
        SurfaceFrame f = surface_frame(g, x, t);
        return FrameVector{w * (uZ * f.Z.x + uNu * f.nu.x), w * (uZ * f.Z.y + uNu * f.nu.y),
                           w * uT};
    };
    return from_coeffs(coeffs, bump_rect(bump));
}

VariationField VariationField::vertical(const IntrinsicGraph& g, const Bump2D& bump) {
    (void)g;
    auto coeffs = [bump](double x, double t) { return FrameVector{0.0, bump(x, t), 0.0}; };
    return from_coeffs(coeffs, bump_rect(bump));
}

VariationField VariationField::horizontal_normal(const IntrinsicGraph& g, const Bump2D& bump) {
    return surface_frame_field(g, 0.0, 1.0, 0.0, bump);
}

ParamSurface as_param_surface(const IntrinsicGraph& g) {
    ParamSurface s;
    s.dom = g.domain();
    s.point = [g](double x, double t) { return embed(g, x, t); };
    s.dx = [g](double x, double t) { return embed_dx(g, x, t); };
    s.dt = [g](double x, double t) { return embed_dt(g, x, t); };
    return s;
}

ParamSurface flow_surface(const ParamSurface& base, const VariationField& field, double s,
                          double coeff_fd_step) {
    ParamSurface out;
    out.dom = base.dom;
    out.point = [base, field, s](double x, double t) {
        FrameVector v = field(x, t);
        return group_mul(base.point(x, t), HPoint{s * v.x, s * v.y, s * v.t});
    };

    auto deriv = [base, field, s, coeff_fd_step](double x, double t, bool along_x) {
        HPoint P = base.point(x, t);
        CoordVector dP = along_x ? base.dx(x, t) : base.dt(x, t);
        FrameVector v = field(x, t);
        double h = coeff_fd_step;
        FrameVector vp = along_x ? field(x + h, t) : field(x, t + h);
        FrameVector vm = along_x ? field(x - h, t) : field(x, t - h);
        FrameVector dv{(vp.x - vm.x) / (2.0 * h), (vp.y - vm.y) / (2.0 * h),
                       (vp.t - vm.t) / (2.0 * h)};
        // Product rule for (P1+sv1, P2+sv2, P3+sv3+sv1 P2 - P1 sv2).
        return CoordVector{dP.x + s * dv.x, dP.y + s * dv.y,
                           dP.t + s * dv.t + s * (dv.x * P.y + v.x * dP.y) -
                               s * (dP.x * v.y + P.x * dv.y)};
    };
    out.dx = [deriv](double x, double t) { return deriv(x, t, true); };
    out.dt = [deriv](double x, double t) { return deriv(x, t, false); };
    return out;
}

double area_param(const ParamSurface& surf, const ConvexBody& body, const QuadratureSpec& quad,
                  const std::optional<Domain2D>& region) {
    Domain2D r = region.value_or(surf.dom);
    double val = integrate_2d(
        [&](double x, double t) {
            HPoint P = surf.point(x, t);
            FrameVector w1 = to_frame(P, surf.dx(x, t));
            FrameVector w2 = to_frame(P, surf.dt(x, t));
            FrameVector n = cross(w1, w2);
            return body.dual_norm(PlaneVector{n.x, n.y});
        },
        r.x0, r.x1, r.t0, r.t1, quad);
    if (!std::isfinite(val)) throw numerical_error("area quadrature produced a non-finite value");
    return val;
}

double first_variation_fd(const IntrinsicGraph& g, const VariationField& field,
                          const ConvexBody& body, const QuadratureSpec& quad, double ds) {
    ParamSurface base = as_param_surface(g);
    Domain2D region = field.support();
    double ap = area_param(flow_surface(base, field, ds), body, quad, region);
    double am = area_param(flow_surface(base, field, -ds), body, quad, region);
    return (ap - am) / (2.0 * ds);
}

double first_variation_formula(const IntrinsicGraph& g, const VariationField& field,
                               const ConvexBody& body, const QuadratureSpec& quad) {
    const Domain2D& r = field.support();
    return integrate_2d(
        [&](double x, double t) {
            FrameVector U = field(x, t);
            if (U.x == 0.0 && U.y == 0.0 && U.t == 0.0) return 0.0;
            SurfaceFrame f = surface_frame(g, x, t);
            double un = dot(U, f.N);
            return un * mean_curvature(g, body, x, t) * f.jac;
        },
        r.x0, r.x1, r.t0, r.t1, quad);
}

double first_variation_graph(const IntrinsicGraph& g, const Bump2D& v, const ConvexBody& body,
                             const QuadratureSpec& quad, double pi_fd_step) {
    Domain2D r = bump_rect(v);
    auto F = [&](double p) {
        double h = pi_fd_step * (1.0 + std::abs(p));
        PlaneVector w = body.pi(PlaneVector{p, -1.0});
        PlaneVector wp = body.pi(PlaneVector{p + h, -1.0});
        PlaneVector wm = body.pi(PlaneVector{p - h, -1.0});
        double d1 = (wp.x - wm.x) / (2.0 * h);
        double d2 = (wp.y - wm.y) / (2.0 * h);
        return w.x + p * d1 - d2;
    };
    return integrate_2d(
        [&](double x, double t) {
            double vx = v.dx(x, t), vt = v.dy(x, t), vv = v(x, t);
            double delta = vx + 2.0 * vv * g.ut(x, t) + 2.0 * g.u(x, t) * vt;
            return delta * F(g.shift_p(x, t));
        },
        r.x0, r.x1, r.t0, r.t1, quad);
}

double q_function(const IntrinsicGraph& g, double x, double t, double step) {
    auto y = [&](double xx, double tt) { return tilt_ratio(g, xx, tt); };
    double zy = z_derivative(g, y, x, t, step);
    double y0 = y(x, t);
    return 4.0 * (zy - y0 * y0);
}

namespace {

void require_stationary(const IntrinsicGraph& g, double tol, const char* what) {
    double res = stationarity_residual(g);
    if (res > tol)
        throw validation_error(std::string(what) +
                               " requires a stationary graph; shift oscillation " +
                               std::to_string(res));
}

}  // namespace

double second_variation_formula(const IntrinsicGraph& g, const Bump2D& f, const ConvexBody& body,
                                const QuadratureSpec& quad, double stationarity_tol) {
    require_stationary(g, stationarity_tol, "second_variation_formula");
    Domain2D r = bump_rect(f);
    return integrate_2d(
        [&](double x, double t) {
            double p = g.shift_p(x, t);
            double lam = std::sqrt(1.0 + p * p);
            double zf = -(f.dx(x, t) + 2.0 * g.u(x, t) * f.dy(x, t)) / lam;
            double fv = f(x, t);
            double q = q_function(g, x, t);
            double kappa = body.curvature(std::atan2(-1.0, p));
            return (zf * zf + q * fv * fv) * lam / kappa;
        },
        r.x0, r.x1, r.t0, r.t1, quad);
}

double second_variation_fd(const IntrinsicGraph& g, const Bump2D& f, const ConvexBody& body,
                           const QuadratureSpec& quad, double ds) {
    VariationField field = VariationField::horizontal_normal(g, f);
    ParamSurface base = as_param_surface(g);
    Domain2D region = field.support();
    double a0 = area_param(base, body, quad, region);
    auto second_diff = [&](double h) {
        double ap = area_param(flow_surface(base, field, h), body, quad, region);
        double am = area_param(flow_surface(base, field, -h), body, quad, region);
        return (ap - 2.0 * a0 + am) / (h * h);
    };
    double coarse = second_diff(ds);
    double fine = second_diff(0.5 * ds);
    return (4.0 * fine - coarse) / 3.0;  // Richardson, leading error h^2
}

IbpResiduals integration_by_parts_residuals(const IntrinsicGraph& g, const Bump2D& h,
                                            const ConvexBody& body, const QuadratureSpec& quad) {
    Domain2D r = bump_rect(h);
    IbpResiduals out;
    out.plain = integrate_2d(
        [&](double x, double t) {
            double p = g.shift_p(x, t);
            double lam = std::sqrt(1.0 + p * p);
            double zh = -(h.dx(x, t) + 2.0 * g.u(x, t) * h.dy(x, t)) / lam;
            return (zh - 2.0 * tilt_ratio(g, x, t) * h(x, t)) * lam;
        },
        r.x0, r.x1, r.t0, r.t1, quad);
    out.dual = integrate_2d(
        [&](double x, double t) {
            double p = g.shift_p(x, t);
            double lam = std::sqrt(1.0 + p * p);
            double zh = -(h.dx(x, t) + 2.0 * g.u(x, t) * h.dy(x, t)) / lam;
            double pnu = body.support(std::atan2(-1.0, p));  // dual norm of unit nu
            return (zh - 2.0 * tilt_ratio(g, x, t) * h(x, t)) * pnu * lam;
        },
        r.x0, r.x1, r.t0, r.t1, quad);
    out.tangent = integrate_2d(
        [&](double x, double t) {
            SurfaceFrame f = surface_frame(g, x, t);
            PlaneVector piv = body.pi(f.nu);
            double pnu = dot(piv, f.nu);
            double pz = dot(piv, f.Z);
            // E(h) stepping in the domain along the direction with embedded
            // velocity E.
            double alpha = f.N_dot_T * f.nu.x;
            double beta = -f.norm_Nh + 2.0 * g.u(x, t) * alpha;
            double eh = alpha * h.dx(x, t) + beta * h.dy(x, t);
            return (pnu * eh + pz * theta_E(g, x, t) * h(x, t)) * f.jac;
        },
        r.x0, r.x1, r.t0, r.t1, quad);
    return out;
}

}  // namespace subfinsler
