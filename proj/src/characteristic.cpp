#include "subfinsler/characteristic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "subfinsler/errors.hpp"

namespace subfinsler {

CharacteristicCurve integrate_characteristic(const IntrinsicGraph& g, double eps,
                                             double s_min, double s_max, double step,
                                             double x_start) {
    if (!(step > 0.0)) throw validation_error("characteristic step must be positive");
    if (s_min > 0.0 || s_max < 0.0) throw validation_error("s range must contain 0");
    const Domain2D& d = g.domain();
    if (!d.contains(x_start, eps))
        throw validation_error("characteristic start point outside the domain");

    auto walk = [&](double dir, std::vector<double>* ss, std::vector<double>* tt) {
        double limit = dir > 0 ? s_max : -s_min;
        int nsteps = static_cast<int>(std::floor(limit / step + 1e-9));
        double s = 0.0, t = eps;
        for (int k = 0; k < nsteps; ++k) {
            double s_next = dir * step * (k + 1);
            double t_next = characteristic_step(g, x_start + s, t, dir * step);
            if (!d.contains(x_start + s_next, t_next)) break;
            s = s_next;
            t = t_next;
            ss->push_back(s);
            tt->push_back(t);
        }
    };

    std::vector<double> sf, tf, sb, tb;
    walk(+1.0, &sf, &tf);
    walk(-1.0, &sb, &tb);

    CharacteristicCurve c;
    c.eps = eps;
    c.x_start = x_start;
    c.s.reserve(sb.size() + 1 + sf.size());
    c.t.reserve(c.s.capacity());
    for (size_t i = sb.size(); i-- > 0;) {
        c.s.push_back(sb[i]);
        c.t.push_back(tb[i]);
    }
    c.s.push_back(0.0);
    c.t.push_back(eps);
    c.s.insert(c.s.end(), sf.begin(), sf.end());
    c.t.insert(c.t.end(), tf.begin(), tf.end());

    c.u.resize(c.s.size());
    c.p.resize(c.s.size());
    for (size_t i = 0; i < c.s.size(); ++i) {
        double x = x_start + c.s[i];
        c.u[i] = g.u(x, c.t[i]);
        c.p[i] = g.shift_p(x, c.t[i]);
    }
    return c;
}

namespace {

// Start characteristics from x = 0 when the domain allows it, else the middle.
double default_axis(const Domain2D& d) {
    if (d.x0 < 0.0 && d.x1 > 0.0) return 0.0;
    return 0.5 * (d.x0 + d.x1);
}

}  // namespace

double stationarity_residual(const IntrinsicGraph& g, int n_eps, double step) {
    const Domain2D& d = g.domain();
    double x_start = default_axis(d);
    double pad = 1e-6 * d.height();
    double res = 0.0;
    for (int k = 0; k < n_eps; ++k) {
        double eps = d.t0 + pad + (d.height() - 2.0 * pad) * (k + 0.5) / n_eps;
        CharacteristicCurve c = integrate_characteristic(g, eps, d.x0 - x_start,
                                                         d.x1 - x_start, step, x_start);
        auto [lo, hi] = std::minmax_element(c.p.begin(), c.p.end());
        res = std::max(res, *hi - *lo);
    }
    return res;
}

double monotonicity_min(const IntrinsicGraph& g, int n_eps, double step) {
    const Domain2D& d = g.domain();
    double x_start = default_axis(d);
    double pad = 1e-6 * d.height();
    std::vector<CharacteristicCurve> curves;
    std::vector<size_t> zero_index;
    for (int k = 0; k < n_eps; ++k) {
        double eps = d.t0 + pad + (d.height() - 2.0 * pad) * k / (n_eps - 1);
        curves.push_back(integrate_characteristic(g, eps, d.x0 - x_start, d.x1 - x_start,
                                                  step, x_start));
        const auto& s = curves.back().s;
        zero_index.push_back(std::lower_bound(s.begin(), s.end(), -0.5 * step) - s.begin());
    }
    double best = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < curves.size(); ++k) {
        const auto& c0 = curves[k];
        const auto& c1 = curves[k + 1];
        double deps = c1.eps - c0.eps;
        // Offsets reachable by both curves, matched through their s = 0 index.
        long lo = -std::min<long>(zero_index[k], zero_index[k + 1]);
        long hi = std::min<long>(c0.s.size() - zero_index[k], c1.s.size() - zero_index[k + 1]);
        for (long j = lo; j < hi; ++j) {
            double t0 = c0.t[zero_index[k] + j];
            double t1 = c1.t[zero_index[k + 1] + j];
            best = std::min(best, (t1 - t0) / deps);
        }
    }
    return best;
}

LineCheck line_check(const IntrinsicGraph& g, const CharacteristicCurve& curve) {
    size_t n = curve.s.size();
    if (n < 3) throw validation_error("line_check needs at least 3 samples");

    Eigen::MatrixXd pts(n, 3);
    for (size_t i = 0; i < n; ++i) {
        HPoint P = embed(g, curve.x_start + curve.s[i], curve.t[i]);
        pts(i, 0) = P.x;
        pts(i, 1) = P.y;
        pts(i, 2) = P.t;
    }
    Eigen::RowVector3d mean = pts.colwise().mean();
    Eigen::MatrixXd centered = pts.rowwise() - mean;
    Eigen::Matrix3d cov = centered.transpose() * centered;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    Eigen::Vector3d dir = es.eigenvectors().col(2);  // largest eigenvalue

    LineCheck out;
    for (size_t i = 0; i < n; ++i) {
        Eigen::Vector3d v = centered.row(i).transpose();
        double off = (v - dir * dir.dot(v)).norm();
        out.max_line_distance = std::max(out.max_line_distance, off);
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        double ds = curve.s[i + 1] - curve.s[i - 1];
        CoordVector vel{(pts(i + 1, 0) - pts(i - 1, 0)) / ds,
                        (pts(i + 1, 1) - pts(i - 1, 1)) / ds,
                        (pts(i + 1, 2) - pts(i - 1, 2)) / ds};
        HPoint P{pts(i, 0), pts(i, 1), pts(i, 2)};
        double speed = std::sqrt(vel.x * vel.x + vel.y * vel.y + vel.t * vel.t);
        out.max_contact = std::max(out.max_contact, std::abs(contact_form(P, vel)) / speed);
    }
    return out;
}

QuadraticFit fit_quadratic(const CharacteristicCurve& curve) {
    size_t n = curve.s.size();
    if (n < 3) throw validation_error("fit_quadratic needs at least 3 samples");
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd rhs(n);
    for (size_t i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = curve.s[i];
        A(i, 2) = curve.s[i] * curve.s[i];
        rhs(i) = curve.t[i];
    }
    Eigen::Vector3d c = (A.transpose() * A).ldlt().solve(A.transpose() * rhs);
    QuadraticFit fit;
    fit.eps0 = c(0);
    fit.a = c(1);
    fit.b = c(2);
    for (size_t i = 0; i < n; ++i) {
        double model = c(0) + c(1) * curve.s[i] + c(2) * curve.s[i] * curve.s[i];
        fit.max_residual = std::max(fit.max_residual, std::abs(model - curve.t[i]));
    }
    return fit;
}

namespace {

// Piecewise-cubic Hermite interpolant with central-difference slopes.
struct Hermite {
    std::vector<double> x, y, m;

    Hermite(std::vector<double> xs, std::vector<double> ys)
        : x(std::move(xs)), y(std::move(ys)) {
        size_t n = x.size();
        m.resize(n);
        if (n == 1) {
            m[0] = 0.0;
            return;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == 0)
                m[i] = (y[1] - y[0]) / (x[1] - x[0]);
            else if (i == n - 1)
                m[i] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
            else
                m[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
        }
    }

    size_t segment(double xv) const {
        size_t i = std::upper_bound(x.begin(), x.end(), xv) - x.begin();
        if (i == 0) return 0;
        if (i >= x.size()) return x.size() - 2;
        return i - 1;
    }

    double value(double xv) const {
        if (x.size() == 1) return y[0];
        size_t i = segment(xv);
        double h = x[i + 1] - x[i], u = (xv - x[i]) / h;
        double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
        double h10 = u * (1 - u) * (1 - u);
        double h01 = u * u * (3 - 2 * u);
        double h11 = u * u * (u - 1);
        return h00 * y[i] + h10 * h * m[i] + h01 * y[i + 1] + h11 * h * m[i + 1];
    }

    double deriv(double xv) const {
        if (x.size() == 1) return 0.0;
        size_t i = segment(xv);
        double h = x[i + 1] - x[i], u = (xv - x[i]) / h;
        double d00 = 6 * u * (u - 1) / h;
        double d10 = (1 - u) * (1 - 3 * u);
        double d01 = -d00;
        double d11 = u * (3 * u - 2);
        return d00 * y[i] + d10 * m[i] + d01 * y[i + 1] + d11 * m[i + 1];
    }
};

}  // namespace

RulingData RulingData::from_samples(std::vector<double> eps, std::vector<double> a,
                                    std::vector<double> b) {
    if (eps.size() < 2 || eps.size() != a.size() || eps.size() != b.size())
        throw validation_error("ruling samples need matching arrays of length >= 2");
    for (size_t i = 1; i < eps.size(); ++i)
        if (!(eps[i] > eps[i - 1]))
            throw validation_error("ruling eps grid must be strictly increasing");

    RulingData r;
    r.eps_lo_ = eps.front();
    r.eps_hi_ = eps.back();
    r.eps_grid_ = eps;
    auto ha = std::make_shared<Hermite>(eps, std::move(a));
    auto hb = std::make_shared<Hermite>(eps, std::move(b));
    r.a_ = [ha](double e) { return ha->value(e); };
    r.da_ = [ha](double e) { return ha->deriv(e); };
    r.b_ = [hb](double e) { return hb->value(e); };
    r.db_ = [hb](double e) { return hb->deriv(e); };
    return r;
}

RulingData RulingData::from_functions(double eps_lo, double eps_hi,
                                      std::function<double(double)> a,
                                      std::function<double(double)> b,
                                      std::function<double(double)> da,
                                      std::function<double(double)> db) {
    if (!(eps_hi > eps_lo)) throw validation_error("ruling eps range must be nonempty");
    RulingData r;
    r.eps_lo_ = eps_lo;
    r.eps_hi_ = eps_hi;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.da_ = std::move(da);
    r.db_ = std::move(db);
    return r;
}

double RulingData::a(double eps) const { return a_(eps); }
double RulingData::b(double eps) const { return b_(eps); }
double RulingData::da(double eps) const { return da_(eps); }
double RulingData::db(double eps) const { return db_(eps); }

std::vector<double> RulingData::eps_samples(int fallback_n) const {
    if (!eps_grid_.empty()) return eps_grid_;
    std::vector<double> out(fallback_n);
    for (int i = 0; i < fallback_n; ++i)
        out[i] = eps_lo_ + (eps_hi_ - eps_lo_) * i / (fallback_n - 1);
    return out;
}

double epsilon_of(const RulingData& r, double x, double t, double tol) {
    auto f = [&](double e) { return ruling_t(r, e, x) - t; };
    double lo = r.eps_lo(), hi = r.eps_hi();
    double flo = f(lo), fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0)
        throw numerical_error("epsilon_of: target t outside the range covered by the ruling");
    double e = std::clamp(t, lo, hi);
    for (int it = 0; it < 60; ++it) {
        double fe = f(e);
        if (std::abs(fe) < tol) return e;
        if (fe > 0.0) hi = e; else lo = e;
        double df = 1.0 + r.da(e) * x + r.db(e) * x * x;
        double next = df > 0.0 ? e - fe / df : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        e = next;
    }
    if (std::abs(f(e)) > 1e3 * tol)
        throw numerical_error("epsilon_of: Newton/bisection failed to converge");
    return e;
}

IntrinsicGraph build_ruled_graph(const RulingData& r, Domain2D dom) {
    // The lines must not cross: d t / d eps = 1 + a' x + b' x^2 > 0.
    const int nx = 9, ne = 33;
    for (int i = 0; i < nx; ++i) {
        double x = dom.x0 + dom.width() * i / (nx - 1);
        for (int j = 0; j < ne; ++j) {
            double e = r.eps_lo() + (r.eps_hi() - r.eps_lo()) * j / (ne - 1);
            double jac = 1.0 + r.da(e) * x + r.db(e) * x * x;
            if (!(jac > 0.0))
                throw validation_error("ruling not monotone: d t/d eps <= 0 at x=" +
                                       std::to_string(x) + ", eps=" + std::to_string(e));
        }
        if (ruling_t(r, r.eps_lo(), x) > dom.t0 || ruling_t(r, r.eps_hi(), x) < dom.t1)
            throw validation_error("ruling eps range does not cover the domain at x=" +
                                   std::to_string(x));
    }

    auto shared = std::make_shared<RulingData>(r);
    auto u = [shared](double x, double t) {
        double e = epsilon_of(*shared, x, t);
        return 0.5 * shared->a(e) + shared->b(e) * x;
    };
    auto ut = [shared](double x, double t) {
        double e = epsilon_of(*shared, x, t);
        double jac = 1.0 + shared->da(e) * x + shared->db(e) * x * x;
        return (0.5 * shared->da(e) + shared->db(e) * x) / jac;
    };
    auto ux = [shared](double x, double t) {
        double e = epsilon_of(*shared, x, t);
        double jac = 1.0 + shared->da(e) * x + shared->db(e) * x * x;
        double num = 0.5 * shared->da(e) + shared->db(e) * x;
        return shared->b(e) - num * (shared->a(e) + 2.0 * shared->b(e) * x) / jac;
    };
    return IntrinsicGraph::from_functions("ruled", dom, u, ux, ut);
}

RulingData extract_ruling(const IntrinsicGraph& g, double eps_lo, double eps_hi, int n) {
    const Domain2D& d = g.domain();
    if (!(d.x0 <= 0.0 && d.x1 >= 0.0))
        throw validation_error("extract_ruling requires the axis x = 0 inside the domain");
    if (!(eps_hi > eps_lo) || n < 2) throw validation_error("extract_ruling: bad eps grid");
    std::vector<double> eps(n), a(n), b(n);
    for (int i = 0; i < n; ++i) {
        eps[i] = eps_lo + (eps_hi - eps_lo) * i / (n - 1);
        a[i] = 2.0 * g.u(0.0, eps[i]);
        b[i] = g.shift_p(0.0, eps[i]);
    }
    return RulingData::from_samples(std::move(eps), std::move(a), std::move(b));
}

}  // namespace subfinsler
