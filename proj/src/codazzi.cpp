#include "subfinsler/codazzi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subfinsler/errors.hpp"

namespace subfinsler {

double codazzi_denominator(double a, double b, double s) {
    double c = 2.0 * a * a - b;
    return 1.0 - 2.0 * a * s + c * s * s;
}

double codazzi_closed_form(double a, double b, double s) {
    double c = 2.0 * a * a - b;
    double den = codazzi_denominator(a, b, s);
    if (std::abs(den) < 1e-12)
        throw numerical_error("closed-form solution evaluated at a pole");
    return (a - c * s) / den;
}

double codazzi_closed_form_d1(double a, double b, double s) {
    double c = 2.0 * a * a - b;
    double den = codazzi_denominator(a, b, s);
    if (std::abs(den) < 1e-12)
        throw numerical_error("closed-form solution evaluated at a pole");
    double num = b - 2.0 * a * c * s + c * c * s * s;
    return num / (den * den);
}

double codazzi_closed_form_d2(double a, double b, double s) {
    double c = 2.0 * a * a - b;
    double den = codazzi_denominator(a, b, s);
    if (std::abs(den) < 1e-12)
        throw numerical_error("closed-form solution evaluated at a pole");
    double m = b - 2.0 * a * c * s + c * c * s * s;
    double m1 = -2.0 * a * c + 2.0 * c * c * s;
    double d1 = -2.0 * a + 2.0 * c * s;
    return (m1 * den - 2.0 * m * d1) / (den * den * den);
}

CodazziClassification classify_global(double a, double b) {
    CodazziClassification out;
    out.pole_lo = -std::numeric_limits<double>::infinity();
    out.pole_hi = std::numeric_limits<double>::infinity();
    if ((a == 0.0 && b == 0.0) || a * a - b > 0.0) {
        out.entire = true;
        return out;
    }
    double c = 2.0 * a * a - b;
    std::vector<double> roots;
    if (c == 0.0) {
        // Denominator is linear; a != 0 here since (0,0) was handled above.
        roots.push_back(1.0 / (2.0 * a));
    } else {
        double disc = a * a - c;  // = b - a^2 >= 0 in the non-entire case
        double sq = std::sqrt(std::max(0.0, disc));
        roots.push_back((a + sq) / c);
        roots.push_back((a - sq) / c);
    }
    for (double r : roots) {
        if (r > 0.0) out.pole_hi = std::min(out.pole_hi, r);
        if (r < 0.0) out.pole_lo = std::max(out.pole_lo, r);
    }
    return out;
}

CodazziSolution integrate_codazzi(double a, double b, double s_min, double s_max, double step) {
    if (!(step > 0.0)) throw validation_error("codazzi step must be positive");
    if (s_min > 0.0 || s_max < 0.0) throw validation_error("s range must contain 0");

    CodazziClassification cls = classify_global(a, b);
    const double guard = 1e9;

    CodazziSolution sol;
    sol.a = a;
    sol.b = b;
    sol.step = step;

    auto rhs = [](double y, double v) { return 6.0 * v * y - 4.0 * y * y * y; };
    auto rk4 = [&](double& y, double& v, double h) {
        double k1y = v, k1v = rhs(y, v);
        double k2y = v + 0.5 * h * k1v, k2v = rhs(y + 0.5 * h * k1y, v + 0.5 * h * k1v);
        double k3y = v + 0.5 * h * k2v, k3v = rhs(y + 0.5 * h * k2y, v + 0.5 * h * k2v);
        double k4y = v + h * k3v, k4v = rhs(y + h * k3y, v + h * k3v);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    };

    auto walk = [&](double dir, std::vector<double>* ss, std::vector<double>* ys,
                    std::vector<double>* vs, bool* truncated) {
        double limit = dir > 0 ? s_max : -s_min;
        double pole_limit = dir > 0 ? cls.pole_hi : -cls.pole_lo;
        int nsteps = static_cast<int>(std::floor(limit / step + 1e-9));
        double y = a, v = b;
        for (int k = 0; k < nsteps; ++k) {
            double s_next = dir * step * (k + 1);
            if (std::abs(s_next) >= pole_limit - step) {
                *truncated = true;
                break;
            }
            rk4(y, v, dir * step);
            if (!std::isfinite(y) || std::abs(y) > guard) {
                *truncated = true;
                break;
            }
            ss->push_back(s_next);
            ys->push_back(y);
            vs->push_back(v);
        }
        if (static_cast<int>(ss->size()) < nsteps && !*truncated) *truncated = true;
    };

    std::vector<double> sf, yf, vf, sb, yb, vb;
    walk(+1.0, &sf, &yf, &vf, &sol.truncated_hi);
    walk(-1.0, &sb, &yb, &vb, &sol.truncated_lo);

    for (size_t i = sb.size(); i-- > 0;) {
        sol.s.push_back(sb[i]);
        sol.y.push_back(yb[i]);
        sol.dy.push_back(vb[i]);
    }
    sol.s.push_back(0.0);
    sol.y.push_back(a);
    sol.dy.push_back(b);
    sol.s.insert(sol.s.end(), sf.begin(), sf.end());
    sol.y.insert(sol.y.end(), yf.begin(), yf.end());
    sol.dy.insert(sol.dy.end(), vf.begin(), vf.end());
    return sol;
}

double first_integral_residual(const CodazziSolution& sol) {
    double a = sol.a, b = sol.b;
    double res = 0.0;
    for (size_t i = 0; i < sol.s.size(); ++i) {
        double den = codazzi_denominator(a, b, sol.s[i]);
        double expect = (a * a - b) / (den * den);
        res = std::max(res, std::abs(sol.y[i] * sol.y[i] - sol.dy[i] - expect));
    }
    return res;
}

SurfaceCodazziCheck codazzi_residual_on_surface(const IntrinsicGraph& g, double eps,
                                                double sbar_max, double step,
                                                double ruling_fd_step) {
    const Domain2D& d = g.domain();
    if (!d.contains(0.0, eps))
        throw validation_error("codazzi surface check needs (0, eps) inside the domain");

    double h = ruling_fd_step;
    double da = (2.0 * g.u(0.0, eps + h) - 2.0 * g.u(0.0, eps - h)) / (2.0 * h);
    double db = (g.shift_p(0.0, eps + h) - g.shift_p(0.0, eps - h)) / (2.0 * h);
    double b = g.shift_p(0.0, eps);
    double lambda = std::sqrt(1.0 + b * b);

    SurfaceCodazziCheck out;
    out.lambda = lambda;

    // Reversed ruling by arc length: x(sbar) = -sbar/lambda, dt/dsbar = -2u/lambda.
    auto ode = [&](double x, double t) { return -2.0 * g.u(x, t) / lambda; };
    auto rk4 = [&](double x, double t, double hh) {
        double k1 = ode(x, t);
        double k2 = ode(x - 0.5 * hh / lambda, t + 0.5 * hh * k1);
        double k3 = ode(x - 0.5 * hh / lambda, t + 0.5 * hh * k2);
        double k4 = ode(x - hh / lambda, t + hh * k3);
        return t + hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    auto sample = [&](double dir, std::vector<double>* ys) {
        int nsteps = static_cast<int>(std::floor(sbar_max / step + 1e-9));
        double t = eps;
        for (int k = 0; k < nsteps; ++k) {
            double sb_next = dir * step * (k + 1);
            double x_next = -sb_next / lambda;
            double t_next = rk4(-dir * step * k / lambda, t, dir * step);
            if (!d.contains(x_next, t_next)) break;
            t = t_next;
            ys->push_back(tilt_ratio(g, x_next, t_next));
        }
    };

    std::vector<double> fwd, bwd;
    sample(+1.0, &fwd);
    sample(-1.0, &bwd);

    std::vector<double> sbar, y;
    for (size_t i = bwd.size(); i-- > 0;) {
        sbar.push_back(-step * static_cast<double>(i + 1));
        y.push_back(bwd[i]);
    }
    size_t zero_idx = y.size();
    sbar.push_back(0.0);
    y.push_back(tilt_ratio(g, 0.0, eps));
    for (size_t i = 0; i < fwd.size(); ++i) {
        sbar.push_back(step * static_cast<double>(i + 1));
        y.push_back(fwd[i]);
    }
    if (y.size() < 5 || zero_idx < 1 || zero_idx + 1 >= y.size())
        throw numerical_error("codazzi surface check: ruling leaves the domain immediately");

    for (size_t i = 1; i + 1 < y.size(); ++i) {
        double d1 = (y[i + 1] - y[i - 1]) / (2.0 * step);
        double d2 = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (step * step);
        double res = std::abs(d2 - 6.0 * d1 * y[i] + 4.0 * y[i] * y[i] * y[i]);
        out.max_ode_residual = std::max(out.max_ode_residual, res);
    }

    double a0 = 0.5 * da;
    double b0 = 0.5 * da * da - db;
    double dy0 = (y[zero_idx + 1] - y[zero_idx - 1]) / (2.0 * step);
    out.gap_y0 = std::abs(lambda * y[zero_idx] - a0);
    out.gap_dy0 = std::abs(lambda * lambda * dy0 - b0);

    for (size_t i = 0; i < y.size(); ++i) {
        double s_unit = sbar[i] / lambda;
        double w = lambda * y[i];
        out.max_closed_form_gap =
            std::max(out.max_closed_form_gap, std::abs(w - codazzi_closed_form(a0, b0, s_unit)));
    }
    return out;
}

}  // namespace subfinsler
