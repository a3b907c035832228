#include "subfinsler/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "subfinsler/errors.hpp"

namespace subfinsler {

namespace {
constexpr double kPi = std::numbers::pi;
}

struct ConvexBody::Impl {
    virtual ~Impl() = default;
    virtual double h(double theta) const = 0;
    virtual double dh(double theta) const = 0;
    virtual double d2h(double theta) const = 0;
};

namespace {

struct DiskImpl final : ConvexBody::Impl {
    double r;
    explicit DiskImpl(double r) : r(r) {}
    double h(double) const override { return r; }
    double dh(double) const override { return 0.0; }
    double d2h(double) const override { return 0.0; }
};

struct EllipseImpl final : ConvexBody::Impl {
    double a2, b2;
    EllipseImpl(double a, double b) : a2(a * a), b2(b * b) {}
    // h = sqrt(a^2 cos^2 + b^2 sin^2); w below is the radicand.
    double h(double th) const override {
        double c = std::cos(th), s = std::sin(th);
        return std::sqrt(a2 * c * c + b2 * s * s);
    }
    double dh(double th) const override {
        double c = std::cos(th), s = std::sin(th);
        double w = a2 * c * c + b2 * s * s;
        double w1 = (b2 - a2) * std::sin(2.0 * th);
        return w1 / (2.0 * std::sqrt(w));
    }
    double d2h(double th) const override {
        double c = std::cos(th), s = std::sin(th);
        double w = a2 * c * c + b2 * s * s;
        double w1 = (b2 - a2) * std::sin(2.0 * th);
        double w2 = 2.0 * (b2 - a2) * std::cos(2.0 * th);
        double sw = std::sqrt(w);
        return w2 / (2.0 * sw) - w1 * w1 / (4.0 * w * sw);
    }
};

// Trigonometric interpolant of uniform samples: h(theta) = a0 +
// sum_m (a_m cos m theta + b_m sin m theta) + a_half cos(N/2 theta).
struct FourierImpl final : ConvexBody::Impl {
    std::vector<double> ac, bc;  // ac[m], bc[m] for m >= 1; ac[0] is the mean
    double a_half = 0.0;
    int n = 0;

    explicit FourierImpl(const std::vector<double>& samples) {
        n = static_cast<int>(samples.size());
        int half = n / 2;
        ac.assign(half, 0.0);
        bc.assign(half, 0.0);
        double scale = 0.0;
        for (double v : samples) scale = std::max(scale, std::abs(v));
        for (int m = 0; m < half; ++m) {
            double ca = 0.0, sa = 0.0;
            for (int k = 0; k < n; ++k) {
                double ang = 2.0 * kPi * m * k / n;
                ca += samples[k] * std::cos(ang);
                sa += samples[k] * std::sin(ang);
            }
            ac[m] = (m == 0 ? ca / n : 2.0 * ca / n);
            bc[m] = (m == 0 ? 0.0 : 2.0 * sa / n);
        }
        if (n % 2 == 0) {
            double ca = 0.0;
            for (int k = 0; k < n; ++k) ca += samples[k] * (k % 2 == 0 ? 1.0 : -1.0);
            a_half = ca / n;
        }
        // Drop coefficients at roundoff level so high modes do not pollute h''.
        double cut = 1e-14 * std::max(scale, 1.0);
        for (int m = 1; m < half; ++m) {
            if (std::abs(ac[m]) < cut) ac[m] = 0.0;
            if (std::abs(bc[m]) < cut) bc[m] = 0.0;
        }
        if (std::abs(a_half) < cut) a_half = 0.0;
    }

    // deriv = 0, 1, 2
    double eval(double th, int deriv) const {
        int half = n / 2;
        double c1 = std::cos(th), s1 = std::sin(th);
        double cm = 1.0, sm = 0.0;  // cos(m th), sin(m th), starting at m=0
        double acc = (deriv == 0) ? ac[0] : 0.0;
        for (int m = 1; m < half; ++m) {
            double cn = cm * c1 - sm * s1;
            double sn = sm * c1 + cm * s1;
            cm = cn;
            sm = sn;
            if (ac[m] == 0.0 && bc[m] == 0.0) continue;
            switch (deriv) {
                case 0: acc += ac[m] * cm + bc[m] * sm; break;
                case 1: acc += m * (-ac[m] * sm + bc[m] * cm); break;
                default: acc += -double(m) * m * (ac[m] * cm + bc[m] * sm); break;
            }
        }
        if (a_half != 0.0) {
            double m = n / 2.0;
            switch (deriv) {
                case 0: acc += a_half * std::cos(m * th); break;
                case 1: acc += -a_half * m * std::sin(m * th); break;
                default: acc += -a_half * m * m * std::cos(m * th); break;
            }
        }
        return acc;
    }

    double h(double th) const override { return eval(th, 0); }
    double dh(double th) const override { return eval(th, 1); }
    double d2h(double th) const override { return eval(th, 2); }
};

}  // namespace

ConvexBody::ConvexBody(std::shared_ptr<const Impl> impl, std::string id)
    : impl_(std::move(impl)), id_(std::move(id)) {}

ConvexBody ConvexBody::disk(double r) {
    if (!(r > 0.0)) throw validation_error("disk radius must be positive");
    return ConvexBody(std::make_shared<DiskImpl>(r), "disk(r=" + std::to_string(r) + ")");
}

ConvexBody ConvexBody::ellipse(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw validation_error("ellipse semi-axes must be positive");
    return ConvexBody(std::make_shared<EllipseImpl>(a, b),
                      "ellipse(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")");
}

ConvexBody ConvexBody::from_support_samples(const std::vector<double>& samples) {
    if (samples.size() < 8) throw validation_error("support_samples needs at least 8 samples");
    for (double v : samples) {
        if (!(v > 0.0)) throw validation_error("support samples must be positive");
        if (!std::isfinite(v)) throw validation_error("support samples must be finite");
    }
    return ConvexBody(std::make_shared<FourierImpl>(samples),
                      "support_samples(n=" + std::to_string(samples.size()) + ")");
}

double ConvexBody::support(double theta) const { return impl_->h(theta); }
double ConvexBody::support_d1(double theta) const { return impl_->dh(theta); }
double ConvexBody::support_d2(double theta) const { return impl_->d2h(theta); }

PlaneVector ConvexBody::boundary_point(double theta) const {
    double h = impl_->h(theta), h1 = impl_->dh(theta);
    double c = std::cos(theta), s = std::sin(theta);
    return {h * c - h1 * s, h * s + h1 * c};
}

PlaneVector ConvexBody::pi(const PlaneVector& v) const {
    if (v.x == 0.0 && v.y == 0.0)
        throw validation_error("pi requires a nonzero direction");
    return boundary_point(std::atan2(v.y, v.x));
}

double ConvexBody::dual_norm(const PlaneVector& v) const {
    double len = norm(v);
    if (len == 0.0) return 0.0;
    return impl_->h(std::atan2(v.y, v.x)) * len;
}

double ConvexBody::gauge_norm(const PlaneVector& v) const {
    double len = norm(v);
    if (len == 0.0) return 0.0;
    // gauge(v) = max_theta <v, e(theta)> / h(theta): the radial function of the
    // polar body is 1/h.  Coarse scan, then golden-section refinement.
    auto f = [&](double th) {
        return (v.x * std::cos(th) + v.y * std::sin(th)) / impl_->h(th);
    };
    const int scan = 720;
    double best = -1.0, best_th = 0.0;
    for (int k = 0; k < scan; ++k) {
        double th = 2.0 * kPi * k / scan;
        double val = f(th);
        if (val > best) {
            best = val;
            best_th = th;
        }
    }
    double lo = best_th - 2.0 * kPi / scan, hi = best_th + 2.0 * kPi / scan;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    return std::max(best, std::max(fc, fd));
}

double ConvexBody::curvature(double theta) const {
    double denom = impl_->h(theta) + impl_->d2h(theta);
    if (!(denom > 0.0))
        throw numerical_error("curvature undefined: h + h'' <= 0 at theta");
    return 1.0 / denom;
}

double ConvexBody::c2plus_margin(int grid) const {
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        double th = 2.0 * kPi * k / grid;
        m = std::min(m, impl_->h(th) + impl_->d2h(th));
    }
    return m;
}

bool ConvexBody::validate_c2_plus(double tol, int grid) const {
    return c2plus_margin(grid) > tol;
}

}  // namespace subfinsler
