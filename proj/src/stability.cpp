#include "subfinsler/stability.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "subfinsler/errors.hpp"

namespace subfinsler {

double stability_form(const IntrinsicGraph& g, const ConvexBody& body, const Bump2D& f,
                      const QuadratureSpec& quad) {
    return second_variation_formula(g, f, body, quad);
}

double stability_form_general(const IntrinsicGraph& g, const ConvexBody& body,
                              const std::function<double(double, double)>& f,
                              const Domain2D& support, const QuadratureSpec& quad,
                              double z_step) {
    return integrate_2d(
        [&](double x, double t) {
            double fv = f(x, t);
            double zf = z_derivative(g, f, x, t, z_step);
            if (fv == 0.0 && zf == 0.0) return 0.0;
            double p = g.shift_p(x, t);
            double lam = std::sqrt(1.0 + p * p);
            double q = q_function(g, x, t);
            double kappa = body.curvature(std::atan2(-1.0, p));
            return (zf * zf + q * fv * fv) * lam / kappa;
        },
        support.x0, support.x1, support.t0, support.t1, quad);
}

double hardy_gap(double A, double B, const HardyWitness& w, int cells, int nodes) {
    if (!(w.s_hi > w.s_lo)) throw validation_error("hardy witness support is empty");
    auto h = [A, B](double s) { return 1.0 + A * s + 0.5 * B * s * s; };
    // The weight must stay positive where the witness lives.
    for (int k = 0; k <= 64; ++k) {
        double s = w.s_lo + (w.s_hi - w.s_lo) * k / 64.0;
        if (!(h(s) > 0.0))
            throw validation_error("hardy weight vanishes inside the witness support");
    }
    double lhs = integrate_1d([&](double s) { double d = w.dpsi(s); return d * d * h(s); },
                              w.s_lo, w.s_hi, cells, nodes);
    double rhs = integrate_1d([&](double s) { double v = w.psi(s); return v * v / h(s); },
                              w.s_lo, w.s_hi, cells, nodes);
    return lhs - (2.0 * B - A * A) * rhs;
}

namespace {

struct BasisGeometry {
    int n_x, n_eps;
    double x0, x1, e0, e1;
    double dx, de;  // bump spacing = halfwidth

    Bump1D phi(int i) const { return Bump1D(x0 + (i + 1) * dx, dx, BumpProfile::cos2); }
    Bump1D psi(int j) const { return Bump1D(e0 + (j + 1) * de, de, BumpProfile::cos2); }

    // Indices of the (at most two) bumps covering coordinate v on an axis.
    static void covering(double v, double origin, double sp, int n, int* idx, int* count) {
        *count = 0;
        double r = (v - origin) / sp;  // bump i covers (i, i+2) in r units
        int lo = static_cast<int>(std::floor(r)) - 1;
        for (int i = lo; i <= lo + 1; ++i)
            if (i >= 0 && i < n) idx[(*count)++] = i;
    }
};

struct AssembledForms {
    Eigen::MatrixXd Q, M;
};

AssembledForms assemble_forms(const IntrinsicGraph& g, const ConvexBody& body,
                              const RulingData& ruling, const BasisGeometry& geo,
                              int nodes_per_cell) {
    const GaussRule& rule = gauss_legendre(nodes_per_cell);
    int nb = geo.n_x * geo.n_eps;
    AssembledForms out;
    out.Q = Eigen::MatrixXd::Zero(nb, nb);
    out.M = Eigen::MatrixXd::Zero(nb, nb);

    int cells_x = geo.n_x + 1, cells_e = geo.n_eps + 1;
    double hx = (geo.x1 - geo.x0) / cells_x;
    double he = (geo.e1 - geo.e0) / cells_e;

    int xi[2], ej[2];
    double phiv[2], phid[2], psiv[2];
    for (int cx = 0; cx < cells_x; ++cx) {
        for (int ix = 0; ix < nodes_per_cell; ++ix) {
            double x = geo.x0 + (cx + 0.5 + 0.5 * rule.nodes[ix]) * hx;
            double wx = 0.5 * hx * rule.weights[ix];
            int ni;
            BasisGeometry::covering(x, geo.x0, geo.dx, geo.n_x, xi, &ni);
            if (ni == 0) continue;
            for (int a = 0; a < ni; ++a) {
                Bump1D b = geo.phi(xi[a]);
                phiv[a] = b(x);
                phid[a] = b.d1(x);
            }
            for (int ce = 0; ce < cells_e; ++ce) {
                for (int ie = 0; ie < nodes_per_cell; ++ie) {
                    double e = geo.e0 + (ce + 0.5 + 0.5 * rule.nodes[ie]) * he;
                    double we = 0.5 * he * rule.weights[ie];
                    int nj;
                    BasisGeometry::covering(e, geo.e0, geo.de, geo.n_eps, ej, &nj);
                    if (nj == 0) continue;
                    for (int a = 0; a < nj; ++a) psiv[a] = geo.psi(ej[a])(e);

                    double p = ruling.b(e);
                    double lam = std::sqrt(1.0 + p * p);
                    double jac = 1.0 + ruling.da(e) * x + ruling.db(e) * x * x;
                    if (!(jac > 0.0))
                        throw numerical_error("ruling jacobian not positive during assembly");
                    double t = ruling_t(ruling, e, x);
                    double q = q_function(g, x, t);
                    double kappa = body.curvature(std::atan2(-1.0, p));
                    double base = wx * we * jac / kappa;
                    double zw = base / lam;        // pairs Z(f) Z(g)
                    double qw = base * lam * q;    // pairs f g against q
                    double mw = base * lam;        // mass pairs

                    for (int a = 0; a < ni; ++a)
                        for (int c = 0; c < nj; ++c) {
                            int row = xi[a] * geo.n_eps + ej[c];
                            double fr = phiv[a] * psiv[c];
                            double zr = phid[a] * psiv[c];
                            for (int a2 = 0; a2 < ni; ++a2)
                                for (int c2 = 0; c2 < nj; ++c2) {
                                    int col = xi[a2] * geo.n_eps + ej[c2];
                                    if (col < row) continue;
                                    double fc = phiv[a2] * psiv[c2];
                                    double zc = phid[a2] * psiv[c2];
                                    out.Q(row, col) += zw * zr * zc + qw * fr * fc;
                                    out.M(row, col) += mw * fr * fc;
                                }
                        }
                }
            }
        }
    }
    out.Q = out.Q.selfadjointView<Eigen::Upper>();
    out.M = out.M.selfadjointView<Eigen::Upper>();
    return out;
}

// Largest eps interval whose lines stay inside the domain over [xl, xr].
bool admissible_eps_range(const Domain2D& d, const RulingData& ruling, double xl, double xr,
                          double* e0, double* e1) {
    const int ne = 257, nx = 33;
    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < ne; ++k) {
        double e = ruling.eps_lo() + (ruling.eps_hi() - ruling.eps_lo()) * k / (ne - 1);
        bool ok = true;
        for (int i = 0; i < nx && ok; ++i) {
            double x = xl + (xr - xl) * i / (nx - 1);
            double t = ruling_t(ruling, e, x);
            ok = (t >= d.t0 && t <= d.t1);
        }
        if (ok) {
            if (std::isnan(lo)) lo = e;
            hi = e;
        }
    }
    if (std::isnan(lo)) return false;
    *e0 = lo;
    *e1 = hi;
    return true;
}

struct SearchWindow {
    double x_lo = 0.0, x_hi = 0.0, e_lo = 0.0, e_hi = 0.0;
};

// Strongly tilted rulings can sweep more height than the domain has over the
// full x range; shrinking the window toward the axis frees an eps interval.
SearchWindow pick_window(const IntrinsicGraph& g, const RulingData& ruling) {
    const Domain2D& d = g.domain();
    double axis = (d.x0 < 0.0 && d.x1 > 0.0) ? 0.0 : 0.5 * (d.x0 + d.x1);
    double want = 0.15 * d.height();
    SearchWindow best;
    bool any = false;
    for (int k = 0; k <= 12; ++k) {
        double f = 1.0 - 0.075 * k;
        SearchWindow w;
        w.x_lo = axis + (d.x0 - axis) * f;
        w.x_hi = axis + (d.x1 - axis) * f;
        if (!admissible_eps_range(d, ruling, w.x_lo, w.x_hi, &w.e_lo, &w.e_hi)) continue;
        if (w.e_hi - w.e_lo >= want) return w;
        if (!any || w.e_hi - w.e_lo > best.e_hi - best.e_lo) {
            best = w;
            any = true;
        }
    }
    if (!any || !(best.e_hi - best.e_lo > 1e-9 * d.height()))
        throw validation_error("no eps interval keeps the ruling inside the domain");
    return best;
}

}  // namespace

std::function<double(double, double)> witness_function(const IntrinsicGraph& g,
                                                       const DestabilizeResult& r) {
    RulingData ruling = extract_ruling(g, r.eps_lo, r.eps_hi, 65);
    BasisGeometry geo{r.n_x,
                      r.n_eps,
                      r.x_lo,
                      r.x_hi,
                      r.eps_lo,
                      r.eps_hi,
                      (r.x_hi - r.x_lo) / (r.n_x + 1),
                      (r.eps_hi - r.eps_lo) / (r.n_eps + 1)};
    std::vector<double> coeffs = r.coeffs;
    return [g, ruling, geo, coeffs](double x, double t) -> double {
        double e;
        try {
            e = epsilon_of(ruling, x, t);
        } catch (const numerical_error&) {
            return 0.0;  // outside the covered strip, where every psi vanishes
        }
        int xi[2], ej[2];
        int ni, nj;
        BasisGeometry::covering(x, geo.x0, geo.dx, geo.n_x, xi, &ni);
        BasisGeometry::covering(e, geo.e0, geo.de, geo.n_eps, ej, &nj);
        double acc = 0.0;
        for (int a = 0; a < ni; ++a)
            for (int c = 0; c < nj; ++c)
                acc += coeffs[xi[a] * geo.n_eps + ej[c]] * geo.phi(xi[a])(x) * geo.psi(ej[c])(e);
        return acc;
    };
}

DestabilizeResult find_destabilizing(const IntrinsicGraph& g, const ConvexBody& body,
                                     const StabilitySearchOptions& opts) {
    double res = stationarity_residual(g);
    if (res > opts.stationarity_tol)
        throw validation_error("find_destabilizing requires a stationary graph; residual " +
                               std::to_string(res));
    const Domain2D& d = g.domain();
    double pad = 1e-9 * d.height();
    RulingData ruling = extract_ruling(g, d.t0 + pad, d.t1 - pad, opts.ruling_samples);
    SearchWindow win = pick_window(g, ruling);

    DestabilizeResult result;
    result.x_lo = win.x_lo;
    result.x_hi = win.x_hi;
    result.eps_lo = win.e_lo;
    result.eps_hi = win.e_hi;

    double prev = std::numeric_limits<double>::quiet_NaN();
    int n_x = opts.n_x, n_eps = opts.n_eps;
    for (int level = 0; level <= opts.max_refine; ++level) {
        BasisGeometry geo{n_x, n_eps, win.x_lo, win.x_hi, win.e_lo, win.e_hi,
                          (win.x_hi - win.x_lo) / (n_x + 1), (win.e_hi - win.e_lo) / (n_eps + 1)};
        AssembledForms forms = assemble_forms(g, body, ruling, geo, opts.nodes_per_cell);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(forms.Q, forms.M);
        if (solver.info() != Eigen::Success)
            throw numerical_error("generalized eigensolve failed during stability search");
        double lam = solver.eigenvalues()(0);
        Eigen::VectorXd vec = solver.eigenvectors().col(0);

        // Max-normalize with a positive leading coefficient for reproducibility.
        int arg = 0;
        for (int i = 1; i < vec.size(); ++i)
            if (std::abs(vec(i)) > std::abs(vec(arg))) arg = i;
        vec /= vec(arg);

        result.n_x = n_x;
        result.n_eps = n_eps;
        result.min_eigenvalue = lam;
        result.coeffs.assign(vec.data(), vec.data() + vec.size());
        result.quadratic_value = vec.transpose() * forms.Q * vec;
        result.mass_value = vec.transpose() * forms.M * vec;

        if (!std::isnan(prev) &&
            std::abs(lam - prev) <= opts.eig_change_tol * std::max(std::abs(lam), std::abs(prev)) + 1e-9) {
            result.converged = true;
            break;
        }
        prev = lam;
        if (level < opts.max_refine) {
            n_x *= 2;
            n_eps *= 2;
        }
    }

    // The witness is only piecewise smooth (bump support edges), so the
    // independent re-check uses many small cells rather than high order,
    // over a box that just covers the witness support.
    auto f = witness_function(g, result);
    Domain2D box{win.x_lo, win.x_hi, d.t1, d.t0};
    for (int i = 0; i < 33; ++i) {
        double x = win.x_lo + (win.x_hi - win.x_lo) * i / 32.0;
        box.t0 = std::min(box.t0, ruling_t(ruling, win.e_lo, x));
        box.t1 = std::max(box.t1, ruling_t(ruling, win.e_hi, x));
    }
    box.t0 = std::max(box.t0, d.t0);
    box.t1 = std::min(box.t1, d.t1);
    result.direct_q = stability_form_general(g, body, f, box, QuadratureSpec{32, 32, 8});
    return result;
}

double vertical_plane_residual(const IntrinsicGraph& g, int grid) {
    const Domain2D& d = g.domain();
    std::vector<double> xs, ys;
    xs.reserve(grid * grid);
    ys.reserve(grid * grid);
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double x = d.x0 + d.width() * i / (grid - 1);
            double t = d.t0 + d.height() * j / (grid - 1);
            HPoint P = embed(g, x, t);
            xs.push_back(P.x);
            ys.push_back(P.y);
        }
    double mx = 0.0, my = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        double ax = xs[k] - mx, ay = ys[k] - my;
        sxx += ax * ax;
        sxy += ax * ay;
        syy += ay * ay;
    }
    Eigen::Matrix2d cov;
    cov << sxx, sxy, sxy, syy;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    Eigen::Vector2d n = es.eigenvectors().col(0);  // smallest eigenvalue: plane normal
    double res = 0.0;
    for (size_t k = 0; k < xs.size(); ++k)
        res = std::max(res, std::abs(n(0) * (xs[k] - mx) + n(1) * (ys[k] - my)));
    return res;
}

StabilityReport bernstein_report(const IntrinsicGraph& g, const ConvexBody& body,
                                 const ReportOptions& opts) {
    StabilityReport rep;
    rep.graph_id = g.id();
    rep.body_id = body.id();
    rep.stationarity_residual = stationarity_residual(g);
    rep.stationary = rep.stationarity_residual <= opts.search.stationarity_tol;
    rep.planarity_residual = vertical_plane_residual(g);

    if (!rep.stationary) {
        rep.verdict = "inconclusive";
        return rep;
    }

    const Domain2D& d = g.domain();
    double pad = 1e-9 * d.height();
    RulingData ruling = extract_ruling(g, d.t0 + pad, d.t1 - pad, opts.search.ruling_samples);
    SearchWindow win = pick_window(g, ruling);
    double e0 = win.e_lo, e1 = win.e_hi;
    double max_da = 0.0, max_db = 0.0;
    for (int k = 0; k < opts.ruling_report_samples; ++k) {
        double e = e0 + (e1 - e0) * k / (opts.ruling_report_samples - 1);
        RulingSample s;
        s.eps = e;
        s.a = ruling.a(e);
        s.b = ruling.b(e);
        s.A = -ruling.da(e);
        s.B = 2.0 * ruling.db(e);
        rep.ruling.push_back(s);
        max_da = std::max(max_da, std::abs(ruling.da(e)));
        max_db = std::max(max_db, std::abs(ruling.db(e)));
    }
    rep.planar = max_da <= opts.planar_tol && max_db <= opts.planar_tol;

    rep.search = find_destabilizing(g, body, opts.search);
    rep.searched = true;

    if (rep.planar)
        rep.verdict = "stable-planar";
    else if (rep.search.min_eigenvalue < -opts.negative_tol && rep.search.direct_q < 0.0)
        rep.verdict = "unstable";
    else
        rep.verdict = "inconclusive";
    return rep;
}

}  // namespace subfinsler
