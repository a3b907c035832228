// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Every check is deterministic (fixed seeds, fixed-step integrators).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "subfinsler/characteristic.hpp"
#include "subfinsler/codazzi.hpp"
#include "subfinsler/convex_body.hpp"
#include "subfinsler/errors.hpp"
#include "subfinsler/io.hpp"
#include "subfinsler/stability.hpp"
#include "subfinsler/variation.hpp"

using namespace subfinsler;

namespace {

int failures = 0;

void report(int k, bool ok, const std::string& detail) {
    std::printf("CRITERION %d: %s (%s)\n", k, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

void run(int k, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        auto [ok, detail] = fn();
        report(k, ok, detail);
    } catch (const std::exception& e) {
        report(k, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

ConvexBody sampled_body() {
    std::vector<double> h(64);
    for (size_t i = 0; i < h.size(); ++i) {
        double th = 2.0 * M_PI * double(i) / double(h.size());
        h[i] = 1.0 + 0.3 * std::cos(th) + 0.15 * std::sin(2.0 * th);
    }
    return ConvexBody::from_support_samples(h);
}

// Dense polygon approximation of the dual norm: max over boundary points.
double polygon_dual_norm(const ConvexBody& body, const PlaneVector& v, int n = 4096) {
    double best = -1e300;
    for (int i = 0; i < n; ++i) {
        PlaneVector p = body.boundary_point(2.0 * M_PI * double(i) / double(n));
        best = std::max(best, v.x * p.x + v.y * p.y);
    }
    return best;
}

const Domain2D kBox{-2.0, 2.0, -1.0, 1.0};

IntrinsicGraph ruled_example() {
    RulingData r = RulingData::from_functions(
        -0.8, 0.8, [](double e) { return 0.2 * e; }, [](double e) { return 0.1 + 0.3 * e; },
        [](double) { return 0.2; }, [](double) { return 0.3; });
    return build_ruled_graph(r, Domain2D{-1.5, 1.5, -0.5, 0.5});
}

// --- criterion 1: convex duality -----------------------------------------

std::pair<bool, std::string> crit1() {
    struct Case {
        ConvexBody body;
        double tol;
    };
    const Case cases[] = {{ConvexBody::disk(1.0), 1e-10},
                          {ConvexBody::ellipse(2.0, 1.0), 1e-10},
                          {sampled_body(), 1e-6}};
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), rad(0.05, 4.0);
    double worst_id = 0.0, worst_oracle = 0.0;
    bool ok = true;
    for (const Case& c : cases) {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            double th = ang(rng), r = rad(rng);
            PlaneVector v{r * std::cos(th), r * std::sin(th)};
            PlaneVector pi = c.body.pi(v);
            double dual = c.body.dual_norm(v);
            double gap = std::abs(v.x * pi.x + v.y * pi.y - dual);
            worst = std::max(worst, gap);
            double oracle = polygon_dual_norm(c.body, v);
            worst_oracle = std::max(worst_oracle, std::abs(dual - oracle));
        }
        ok = ok && worst <= c.tol;
        worst_id = std::max(worst_id, worst);
    }
    ok = ok && worst_oracle <= 1e-4;  // 4096-gon truncation dominates
    return {ok, "pairing identity max gap " + fmt(worst_id) + ", polygon oracle max gap " +
                    fmt(worst_oracle)};
}

// --- criterion 2: disk specialization -------------------------------------

std::pair<bool, std::string> crit2() {
    ConvexBody disk = ConvexBody::disk(1.0);
    IntrinsicGraph gs[] = {graphs::zero(kBox), graphs::affine(0.4, -0.3, kBox),
                           graphs::xt_over_1px2(kBox), graphs::poly({{0.0, 0.3}}, kBox),
                           graphs::poly({{0.1, 0.3}, {0.0, 0.2}}, kBox)};
    double worst = 0.0;
    for (const IntrinsicGraph& g : gs) {
        double a = subfinsler_area(g, disk, {});
        double r = integrate_2d(
            [&](double x, double t) {
                double p = g.shift_p(x, t);
                return std::sqrt(1.0 + p * p);
            },
            kBox.x0, kBox.x1, kBox.t0, kBox.t1, {});
        worst = std::max(worst, std::abs(a - r) / std::abs(r));
    }
    return {worst <= 1e-8, "5 graphs, max relative gap " + fmt(worst)};
}

// --- criterion 3: first variation ------------------------------------------

std::pair<bool, std::string> crit3() {
    IntrinsicGraph gs[] = {graphs::xt_over_1px2(kBox), graphs::poly({{0.0, 0.3}}, kBox),
                           graphs::poly({{0.1, 0.3}, {0.0, 0.2}}, kBox)};
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};
    Bump2D bump(Bump1D(0.0, 1.2), Bump1D(0.0, 0.6));
    int triples = 0;
    double worst = 0.0, worst_el = 0.0;
    for (const IntrinsicGraph& g : gs) {
        for (const ConvexBody& body : bodies) {
            VariationField fields[] = {VariationField::vertical(g, bump),
                                       VariationField::horizontal_normal(g, bump),
                                       VariationField::surface_frame_field(g, 0.3, 0.5, 0.2, bump)};
            for (const VariationField& U : fields) {
                double fd = first_variation_fd(g, U, body);
                double fo = first_variation_formula(g, U, body);
                worst = std::max(worst, std::abs(fd - fo) / (1.0 + std::abs(fd)));
                ++triples;
            }
            // Graph Euler-Lagrange route as a third independent value.
            double fd = first_variation_fd(g, VariationField::vertical(g, bump), body);
            double el = first_variation_graph(g, bump, body);
            worst_el = std::max(worst_el, std::abs(el - fd) / (1.0 + std::abs(fd)));
        }
    }
    bool ok = triples >= 12 && worst <= 1e-4 && worst_el <= 1e-4;
    return {ok, std::to_string(triples) + " triples, max scaled gap " + fmt(worst) +
                    ", EL route " + fmt(worst_el)};
}

// --- criterion 4: foliation by horizontal lines ----------------------------

std::pair<bool, std::string> crit4() {
    struct Case {
        IntrinsicGraph g;
        std::vector<double> eps;
    };
    Case cases[] = {{graphs::zero(kBox), {-0.5, 0.0, 0.5}},
                    {graphs::affine(0.4, -0.3, kBox), {-0.4, 0.1, 0.5}},
                    {graphs::xt_over_1px2(kBox), {-0.5, -0.1, 0.3, 0.6}},
                    {ruled_example(), {-0.3, 0.0, 0.35}}};
    double worst_osc = 0.0, worst_line = 0.0, worst_quad = 0.0;
    for (const Case& c : cases) {
        worst_osc = std::max(worst_osc, stationarity_residual(c.g));
        for (double eps : c.eps) {
            CharacteristicCurve curve = integrate_characteristic(c.g, eps, -1.2, 1.2);
            LineCheck lc = line_check(c.g, curve);
            worst_line = std::max({worst_line, lc.max_line_distance, lc.max_contact});
            worst_quad = std::max(worst_quad, fit_quadratic(curve).max_residual);
        }
    }
    bool ok = worst_osc <= 1e-8 && worst_line <= 1e-8 && worst_quad <= 1e-8;
    return {ok, "p-oscillation " + fmt(worst_osc) + ", line " + fmt(worst_line) + ", quadratic " +
                    fmt(worst_quad)};
}

// --- criterion 5: Codazzi-type ODE -----------------------------------------

std::pair<bool, std::string> crit5() {
    std::mt19937 rng(505);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0), lamd(0.5, 2.0);
    double worst_ode = 0.0, worst_fi = 0.0, worst_dil = 0.0;
    int accepted = 0;
    while (accepted < 100) {
        double a = coeff(rng), b = coeff(rng);
        CodazziClassification cls = classify_global(a, b);
        double lo = std::max(-1.0, cls.pole_lo + 0.2);
        double hi = std::min(1.0, cls.pole_hi - 0.2);
        if (hi - lo < 0.2) continue;
        ++accepted;

        CodazziSolution sol = integrate_codazzi(a, b, lo, hi, 1e-4);
        double gap = 0.0;
        for (size_t i = 0; i < sol.s.size(); ++i)
            gap = std::max(gap, std::abs(sol.y[i] - codazzi_closed_form(a, b, sol.s[i])));
        worst_ode = std::max(worst_ode, gap);
        worst_fi = std::max(worst_fi, first_integral_residual(sol));

        double lam = lamd(rng);
        CodazziClassification scl = classify_global(a / lam, b / (lam * lam));
        double slo = std::max(-1.0, scl.pole_lo + 0.2);
        double shi = std::min(1.0, scl.pole_hi - 0.2);
        if (shi > slo) {
            for (int i = 0; i <= 8; ++i) {
                double s = slo + (shi - slo) * i / 8.0;
                double lhs = codazzi_closed_form(a, b, s / lam) / lam;
                double rhs = codazzi_closed_form(a / lam, b / (lam * lam), s);
                worst_dil = std::max(worst_dil, std::abs(lhs - rhs));
            }
        }
    }
    bool ok = worst_ode <= 1e-8 && worst_fi <= 1e-10 && worst_dil <= 1e-8;
    return {ok, "100 samples, ODE " + fmt(worst_ode) + ", first integral " + fmt(worst_fi) +
                    ", dilation " + fmt(worst_dil)};
}

// --- criterion 6: second variation -----------------------------------------

std::pair<bool, std::string> crit6() {
    struct Case {
        IntrinsicGraph g;
        Bump2D f;
    };
    Case cases[] = {{graphs::xt_over_1px2(kBox), Bump2D(Bump1D(0.0, 1.2), Bump1D(0.0, 0.6))},
                    {graphs::affine(0.4, -0.3, kBox), Bump2D(Bump1D(0.0, 1.2), Bump1D(0.0, 0.6))},
                    {ruled_example(), Bump2D(Bump1D(0.0, 1.0), Bump1D(0.0, 0.35))}};
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0)};
    double worst = 0.0, min_mag = 1e300;
    for (const Case& c : cases) {
        for (const ConvexBody& body : bodies) {
            double fo = second_variation_formula(c.g, c.f, body);
            double fd = second_variation_fd(c.g, c.f, body);
            min_mag = std::min(min_mag, std::abs(fo));
            worst = std::max(worst, std::abs(fd - fo) / std::abs(fo));
        }
    }
    bool ok = worst <= 1e-3 && min_mag > 1e-6;
    return {ok, "3 graphs x 2 bodies, max relative gap " + fmt(worst) + ", min |Q| " +
                    fmt(min_mag)};
}

// --- criterion 7: Bernstein verdicts ----------------------------------------

std::pair<bool, std::string> crit7() {
    ReportOptions opts;
    opts.search.n_x = 8;
    opts.search.n_eps = 8;
    opts.search.max_refine = 1;

    StabilityReport zero = bernstein_report(graphs::zero(kBox), ConvexBody::disk(1.0), opts);
    StabilityReport aff =
        bernstein_report(graphs::affine(0.4, -0.3, kBox), ConvexBody::ellipse(2.0, 1.0), opts);
    StabilityReport xt = bernstein_report(graphs::xt_over_1px2(kBox), ConvexBody::disk(1.0), opts);

    bool planes_ok = zero.verdict == "stable-planar" && aff.verdict == "stable-planar" &&
                     zero.search.min_eigenvalue >= -1e-8 && aff.search.min_eigenvalue >= -1e-8;
    double direct_gap = std::abs(xt.search.direct_q - xt.search.quadratic_value);
    bool xt_ok = xt.verdict == "unstable" && xt.search.min_eigenvalue < 0.0 &&
                 xt.search.quadratic_value < 0.0 && xt.search.direct_q < 0.0 &&
                 direct_gap <= 0.01 * std::abs(xt.search.quadratic_value);
    return {planes_ok && xt_ok,
            "plane eigenvalues " + fmt(zero.search.min_eigenvalue) + "/" +
                fmt(aff.search.min_eigenvalue) + ", xt eigenvalue " +
                fmt(xt.search.min_eigenvalue) + ", direct re-check within " +
                fmt(direct_gap / std::abs(xt.search.quadratic_value))};
}

// --- criterion 8: Hardy-type gap --------------------------------------------

std::pair<bool, std::string> crit8() {
    // (A, B) = (0, 2): the inequality fails, witnessed by a flat-tail psi.
    auto cut = [](double s) {
        double a = std::abs(s);
        if (a <= 6.0) return 1.0;
        if (a >= 10.0) return 0.0;
        double c = std::cos(0.5 * M_PI * (a - 6.0) / 4.0);
        return c * c;
    };
    auto dcut = [](double s) {
        double a = std::abs(s);
        if (a <= 6.0 || a >= 10.0) return 0.0;
        return -0.125 * M_PI * std::sin(M_PI * (a - 6.0) / 4.0) * (s > 0 ? 1.0 : -1.0);
    };
    HardyWitness w;
    w.s_lo = -10.0;
    w.s_hi = 10.0;
    w.psi = [cut](double s) { return cut(s) / (1.0 + s * s); };
    w.dpsi = [cut, dcut](double s) {
        return dcut(s) / (1.0 + s * s) - cut(s) * 2.0 * s / ((1.0 + s * s) * (1.0 + s * s));
    };
    double neg_gap = hardy_gap(0.0, 2.0, w, 128, 16);

    // 2B = A^2: gap >= 0 for 100 random bumps wherever the weight stays positive.
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> As(-1.0, 1.0), cs(-2.0, 2.0), ws(0.5, 2.0);
    double min_gap = 1e300;
    int accepted = 0;
    while (accepted < 100) {
        double A = As(rng);
        double B = A * A / 2.0;  // exact in IEEE: 2B - A^2 == 0
        Bump1D psi(cs(rng), ws(rng));
        double slo = psi.center - psi.halfwidth, shi = psi.center + psi.halfwidth;
        double hlo = 1.0 + A * slo + B * slo * slo / 2.0;
        double hhi = 1.0 + A * shi + B * shi * shi / 2.0;
        if (hlo <= 0.05 || hhi <= 0.05) continue;
        ++accepted;
        HardyWitness v;
        v.s_lo = slo;
        v.s_hi = shi;
        v.psi = [psi](double s) { return psi(s); };
        v.dpsi = [psi](double s) { return psi.d1(s); };
        min_gap = std::min(min_gap, hardy_gap(A, B, v));
    }
    bool ok = neg_gap < 0.0 && min_gap >= -1e-12;
    return {ok, "failing gap " + fmt(neg_gap) + " at (0,2), degenerate-coupling min gap " +
                    fmt(min_gap)};
}

// --- criterion 9: integration by parts --------------------------------------

std::pair<bool, std::string> crit9() {
    IntrinsicGraph gs[] = {graphs::zero(kBox), graphs::affine(0.4, -0.3, kBox),
                           graphs::xt_over_1px2(kBox)};
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};
    // Off-center bump: a centered one is antisymmetric against these graphs
    // and the symmetric node layout would cancel the residual exactly.
    Bump2D bump(Bump1D(0.3, 1.2), Bump1D(0.15, 0.6));
    double worst = 0.0;
    for (const IntrinsicGraph& g : gs)
        for (const ConvexBody& body : bodies) {
            IbpResiduals r = integration_by_parts_residuals(g, bump, body);
            worst = std::max({worst, std::abs(r.plain), std::abs(r.dual), std::abs(r.tangent)});
        }

    // Refinement at the quadrature's order: with 2-node Gauss cells the error
    // drops like h^4, so halving the cells must shrink it at least 4x.
    IntrinsicGraph g = graphs::xt_over_1px2(kBox);
    ConvexBody ell = ConvexBody::ellipse(2.0, 1.0);
    auto res = [&](int cells) {
        IbpResiduals r =
            integration_by_parts_residuals(g, bump, ell, QuadratureSpec{cells, cells, 2});
        return std::max({std::abs(r.plain), std::abs(r.dual), std::abs(r.tangent)});
    };
    double r2 = res(2), r4 = res(4);
    bool ok = worst <= 1e-5 && r2 > 1e-12 && r4 <= r2 / 4.0;
    return {ok, "max residual " + fmt(worst) + ", refinement " + fmt(r2) + " -> " + fmt(r4)};
}

}  // namespace

int main() {
    run(1, crit1);
    run(2, crit2);
    run(3, crit3);
    run(4, crit4);
    run(5, crit5);
    run(6, crit6);
    run(7, crit7);
    run(8, crit8);
    run(9, crit9);
    if (failures == 0) {
        std::printf("ACCEPTANCE: all 9 criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return 1;
}
