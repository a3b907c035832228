#include <doctest.h>

#include <cmath>
#include <random>

#include "subfinsler/errors.hpp"
#include "subfinsler/stability.hpp"

using namespace subfinsler;

namespace {

Domain2D box{-2.0, 2.0, -1.0, 1.0};
std::mt19937 rng(20240);
double rnd(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

TEST_CASE("stability form agrees with the second variation formula") {
    IntrinsicGraph g = graphs::xt_over_1px2(box);
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0)};
    Bump2D f(Bump1D(0.1, 1.0), Bump1D(0.0, 0.5));
    for (const ConvexBody& body : bodies) {
        CHECK(stability_form(g, body, f) ==
              doctest::Approx(second_variation_formula(g, f, body)).epsilon(1e-12));
    }
}

TEST_CASE("general-field stability form matches the tensor route") {
    IntrinsicGraph g = graphs::xt_over_1px2(box);
    ConvexBody disk = ConvexBody::disk(1.0);
    Bump2D f(Bump1D(0.0, 1.0), Bump1D(0.1, 0.4));
    double tensor = stability_form(g, disk, f);
    Domain2D sup{-1.0, 1.0, -0.3, 0.5};
    double general = stability_form_general(
        g, disk, [&](double x, double t) { return f(x, t); }, sup, QuadratureSpec{24, 24, 8});
    CHECK(general == doctest::Approx(tensor).epsilon(2e-3));
}

TEST_CASE("hardy gap is negative for the flat-tail witness") {
    // A = 0, B = 2: weight h = 1 + s^2, potential coefficient 2B - A^2 = 4.
    // With psi = 1/(1+s^2) the untruncated gap is -pi; a wide cutoff keeps
    // it clearly below zero.
    auto cut = [](double s) {
        double a = std::abs(s);
        if (a <= 6.0) return 1.0;
        if (a >= 10.0) return 0.0;
        double r = (a - 6.0) / 4.0;
        double c = std::cos(0.5 * M_PI * r);
        return c * c;
    };
    auto dcut = [](double s) {
        double a = std::abs(s);
        if (a <= 6.0 || a >= 10.0) return 0.0;
        double r = (a - 6.0) / 4.0;
        double sgn = s > 0 ? 1.0 : -1.0;
        return -0.5 * M_PI / 4.0 * std::sin(M_PI * r) * sgn;
    };
    HardyWitness w;
    w.s_lo = -10.0;
    w.s_hi = 10.0;
    w.psi = [cut](double s) { return cut(s) / (1.0 + s * s); };
    w.dpsi = [cut, dcut](double s) {
        return dcut(s) / (1.0 + s * s) - cut(s) * 2.0 * s / ((1.0 + s * s) * (1.0 + s * s));
    };
    double gap = hardy_gap(0.0, 2.0, w, 128, 16);
    CHECK(gap < -2.0);
    CHECK(gap > -M_PI - 0.5);
}

TEST_CASE("hardy gap is nonnegative at the degenerate coupling") {
    // 2B = A^2 makes the potential term vanish; the gap reduces to the
    // positive gradient integral for any psi.
    for (int k = 0; k < 100; ++k) {
        double A = rnd(-1.0, 1.0);
        double B = A * A / 2.0;
        double c = rnd(-2.0, 2.0), wdt = rnd(0.5, 2.0);
        Bump1D psi(c, wdt);
        HardyWitness w;
        w.s_lo = c - wdt;
        w.s_hi = c + wdt;
        w.psi = [psi](double s) { return psi(s); };
        w.dpsi = [psi](double s) { return psi.d1(s); };
        // Shrink the window until h = 1 + A s + B s^2/2 > 0 on it.
        double hlo = 1.0 + A * w.s_lo + B * w.s_lo * w.s_lo / 2.0;
        double hhi = 1.0 + A * w.s_hi + B * w.s_hi * w.s_hi / 2.0;
        if (hlo <= 0.05 || hhi <= 0.05) continue;
        CHECK(hardy_gap(A, B, w) >= -1e-12);
    }
}

TEST_CASE("hardy gap rejects vanishing weights") {
    Bump1D psi(0.0, 2.0);
    HardyWitness w;
    w.s_lo = -2.0;
    w.s_hi = 2.0;
    w.psi = [psi](double s) { return psi(s); };
    w.dpsi = [psi](double s) { return psi.d1(s); };
    // h = 1 - s^2/2 vanishes at sqrt(2) inside the support.
    CHECK_THROWS_AS(hardy_gap(0.0, -1.0, w), validation_error);
}

TEST_CASE("eigen search finds the destabilizing direction of the xt graph") {
    IntrinsicGraph g = graphs::xt_over_1px2(box);
    ConvexBody disk = ConvexBody::disk(1.0);
    StabilitySearchOptions opts;
    opts.n_x = 8;
    opts.n_eps = 8;
    opts.max_refine = 1;
    DestabilizeResult r = find_destabilizing(g, disk, opts);

    CHECK(r.min_eigenvalue < -0.5);
    CHECK(r.quadratic_value < 0.0);
    CHECK(r.mass_value > 0.0);
    // Rayleigh quotient of the witness equals the eigenvalue.
    CHECK(r.quadratic_value / r.mass_value == doctest::Approx(r.min_eigenvalue).epsilon(1e-9));
    // Independent quadrature of Q on the witness confirms the negative value.
    CHECK(r.direct_q < 0.0);
    CHECK(std::abs(r.direct_q - r.quadratic_value) <= 0.01 * std::abs(r.quadratic_value));
    // Witness coefficients are max-normalized.
    double mx = 0.0;
    for (double c : r.coeffs) mx = std::max(mx, std::abs(c));
    CHECK(mx == doctest::Approx(1.0).epsilon(1e-12));

    // The witness function is supported in the advertised window.
    auto fw = witness_function(g, r);
    CHECK(fw(r.x_lo - 0.05, 0.0) == 0.0);
    CHECK(fw(r.x_hi + 0.05, 0.0) == 0.0);
    double interior = fw(0.5 * (r.x_lo + r.x_hi), 0.0);
    CHECK(std::abs(interior) > 0.0);
}

TEST_CASE("eigen search returns positive eigenvalues on planes") {
    StabilitySearchOptions opts;
    opts.n_x = 6;
    opts.n_eps = 6;
    opts.max_refine = 0;
    DestabilizeResult rz = find_destabilizing(graphs::zero(box), ConvexBody::disk(1.0), opts);
    CHECK(rz.min_eigenvalue > 0.0);
    DestabilizeResult ra =
        find_destabilizing(graphs::affine(0.4, -0.3, box), ConvexBody::ellipse(2.0, 1.0), opts);
    CHECK(ra.min_eigenvalue > 0.0);
}

TEST_CASE("eigen search rejects nonstationary graphs") {
    IntrinsicGraph g = graphs::poly({{0.0, 0.3}}, box);
    CHECK_THROWS_AS(find_destabilizing(g, ConvexBody::disk(1.0)), validation_error);
}

TEST_CASE("vertical plane residual") {
    CHECK(vertical_plane_residual(graphs::zero(box)) < 1e-12);
    CHECK(vertical_plane_residual(graphs::affine(0.4, -0.3, box)) < 1e-12);
    CHECK(vertical_plane_residual(graphs::xt_over_1px2(box)) > 0.1);
}

TEST_CASE("verdicts for the model surfaces") {
    ReportOptions opts;
    opts.search.n_x = 8;
    opts.search.n_eps = 8;
    opts.search.max_refine = 1;

    StabilityReport zero = bernstein_report(graphs::zero(box), ConvexBody::disk(1.0), opts);
    CHECK(zero.verdict == "stable-planar");
    CHECK(zero.stationary);
    CHECK(zero.planar);
    CHECK(zero.planarity_residual < 1e-10);

    StabilityReport aff =
        bernstein_report(graphs::affine(0.4, -0.3, box), ConvexBody::ellipse(2.0, 1.0), opts);
    CHECK(aff.verdict == "stable-planar");
    CHECK(aff.planar);

    StabilityReport xt = bernstein_report(graphs::xt_over_1px2(box), ConvexBody::disk(1.0), opts);
    CHECK(xt.verdict == "unstable");
    CHECK(xt.stationary);
    CHECK_FALSE(xt.planar);
    CHECK(xt.searched);
    CHECK(xt.search.min_eigenvalue < -0.5);
    // Ruling samples carry the curvature data A = -a', B = 2 b'.
    REQUIRE(!xt.ruling.empty());
    for (const RulingSample& s : xt.ruling) {
        CHECK(s.a == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
        CHECK(s.b == doctest::Approx(s.eps).scale(1.0).epsilon(1e-8));
        CHECK(s.A == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
        CHECK(s.B == doctest::Approx(2.0).scale(1.0).epsilon(1e-6));
    }

    StabilityReport bad =
        bernstein_report(graphs::poly({{0.0, 0.3}}, box), ConvexBody::disk(1.0), opts);
    CHECK(bad.verdict == "inconclusive");
    CHECK_FALSE(bad.stationary);
    CHECK_FALSE(bad.searched);
}

TEST_CASE("instability is body-dependent in general but persists here") {
    // The xt graph is destabilized for the asymmetric sampled body too.
    std::vector<double> h(64);
    for (size_t i = 0; i < h.size(); ++i) {
        double th = 2.0 * M_PI * double(i) / double(h.size());
        h[i] = 1.0 + 0.3 * std::cos(th) + 0.15 * std::sin(2.0 * th);
    }
    ConvexBody body = ConvexBody::from_support_samples(h);
    StabilitySearchOptions opts;
    opts.n_x = 8;
    opts.n_eps = 8;
    opts.max_refine = 1;
    DestabilizeResult r = find_destabilizing(graphs::xt_over_1px2(box), body, opts);
    CHECK(r.min_eigenvalue < 0.0);
    CHECK(r.direct_q < 0.0);
}
