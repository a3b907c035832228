#include <doctest.h>

#include <cmath>

#include "subfinsler/errors.hpp"
#include "subfinsler/variation.hpp"

using namespace subfinsler;

namespace {

Domain2D box{-2.0, 2.0, -1.0, 1.0};

Bump2D centered_bump() { return Bump2D(Bump1D(0.0, 1.2), Bump1D(0.0, 0.6)); }

ConvexBody sampled_body() {
    // Asymmetric smooth body: h = 1 + 0.3 cos(th) + 0.15 sin(2 th).
    std::vector<double> h(64);
    for (size_t i = 0; i < h.size(); ++i) {
        double th = 2.0 * M_PI * double(i) / double(h.size());
        h[i] = 1.0 + 0.3 * std::cos(th) + 0.15 * std::sin(2.0 * th);
    }
    return ConvexBody::from_support_samples(h);
}

}  // namespace

TEST_CASE("flowed surface reproduces the vertical graph deformation") {
    // Flowing along bump * Y moves Gr(u) to Gr(u + s bump) exactly.
    IntrinsicGraph g = graphs::xt_over_1px2(box);
    Bump2D v = centered_bump();
    VariationField U = VariationField::vertical(g, v);
    ParamSurface flowed = flow_surface(as_param_surface(g), U, 0.25);
    for (double x : {-0.9, 0.0, 0.7}) {
        for (double t : {-0.4, 0.1, 0.5}) {
            HPoint got = flowed.point(x, t);
            double u2 = g.u(x, t) + 0.25 * v(x, t);
            CHECK(got.x == doctest::Approx(x).scale(1.0).epsilon(1e-12));
            CHECK(got.y == doctest::Approx(u2).scale(1.0).epsilon(1e-12));
            CHECK(got.t == doctest::Approx(t - x * u2).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("parametrized area agrees with the graph area") {
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};
    IntrinsicGraph gs[] = {graphs::zero(box), graphs::xt_over_1px2(box),
                           graphs::poly({{0.0, 0.3}}, box)};
    for (const ConvexBody& body : bodies) {
        for (const IntrinsicGraph& g : gs) {
            double direct = subfinsler_area(g, body, {});
            double via_param = area_param(as_param_surface(g), body, {});
            CHECK(via_param == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("first variation of stationary graphs vanishes") {
    IntrinsicGraph gs[] = {graphs::xt_over_1px2(box), graphs::affine(0.4, -0.3, box),
                           graphs::zero(box)};
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};
    Bump2D bump = centered_bump();
    for (const IntrinsicGraph& g : gs) {
        for (const ConvexBody& body : bodies) {
            VariationField fields[] = {VariationField::vertical(g, bump),
                                       VariationField::horizontal_normal(g, bump),
                                       VariationField::surface_frame_field(g, 0.3, 0.5, 0.2, bump)};
            for (const VariationField& U : fields) {
                CHECK(std::abs(first_variation_formula(g, U, body)) < 1e-10);
                // FD carries O(ds^2) truncation from the third area derivative.
                CHECK(std::abs(first_variation_fd(g, U, body)) < 1e-5);
            }
            CHECK(std::abs(first_variation_graph(g, bump, body)) < 1e-8);
        }
    }
}

TEST_CASE("first variation routes agree on nonstationary graphs") {
    IntrinsicGraph g = graphs::poly({{0.0, 0.3}}, box);  // u = 0.3 t
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};
    Bump2D bump = centered_bump();
    for (const ConvexBody& body : bodies) {
        VariationField fields[] = {VariationField::vertical(g, bump),
                                   VariationField::horizontal_normal(g, bump),
                                   VariationField::surface_frame_field(g, 0.3, 0.5, 0.2, bump)};
        for (const VariationField& U : fields) {
            double fd = first_variation_fd(g, U, body);
            double formula = first_variation_formula(g, U, body);
            CHECK(formula == doctest::Approx(fd).scale(1.0).epsilon(1e-5));
        }
        // The vertical route has its own closed-form integrand.
        double fd = first_variation_fd(g, VariationField::vertical(g, bump), body);
        double graph_route = first_variation_graph(g, bump, body);
        CHECK(graph_route == doctest::Approx(fd).scale(1.0).epsilon(1e-5));
        CHECK(graph_route ==
              doctest::Approx(first_variation_formula(g, VariationField::vertical(g, bump), body))
                  .scale(1.0)
                  .epsilon(1e-9));
    }
}

TEST_CASE("tangential fields do not move the area") {
    // E and Z span the tangent plane; first variation along them is zero
    // even on nonstationary graphs (reparametrization only).
    IntrinsicGraph g = graphs::poly({{0.0, 0.3}}, box);
    Bump2D bump = centered_bump();
    ConvexBody disk = ConvexBody::disk(1.0);
    // uZ Z is tangent: coefficient along nu and T both zero.
    VariationField tangentZ = VariationField::surface_frame_field(g, 1.0, 0.0, 0.0, bump);
    CHECK(std::abs(first_variation_fd(g, tangentZ, disk)) < 1e-6);
    CHECK(std::abs(first_variation_formula(g, tangentZ, disk)) < 1e-10);
}

TEST_CASE("q potential in closed form") {
    // For u = x t/(1+x^2): q = -4 / ((1+x^2)^2 (1+eps^2)) at t = eps (1+x^2).
    IntrinsicGraph g = graphs::xt_over_1px2(box);
    for (double x : {-1.2, -0.4, 0.0, 0.6, 1.4}) {
        for (double eps : {-0.5, -0.1, 0.2, 0.6}) {
            double t = eps * (1.0 + x * x);
            if (t < box.t0 + 0.05 || t > box.t1 - 0.05) continue;
            double expect = -4.0 / ((1.0 + x * x) * (1.0 + x * x) * (1.0 + eps * eps));
            CHECK(q_function(g, x, t) == doctest::Approx(expect).scale(1.0).epsilon(1e-6));
        }
    }
    // Planes have q = 0.
    CHECK(std::abs(q_function(graphs::zero(box), 0.3, 0.2)) < 1e-10);
    CHECK(std::abs(q_function(graphs::affine(0.4, -0.3, box), 0.3, 0.2)) < 1e-9);
}

TEST_CASE("second variation formula matches finite differences") {
    IntrinsicGraph gs[] = {graphs::xt_over_1px2(box), graphs::affine(0.4, -0.3, box)};
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};
    Bump2D bump = centered_bump();
    for (const IntrinsicGraph& g : gs) {
        for (const ConvexBody& body : bodies) {
            double formula = second_variation_formula(g, bump, body);
            double fd = second_variation_fd(g, bump, body);
            REQUIRE(std::abs(formula) > 1e-3);
            CHECK(fd == doctest::Approx(formula).epsilon(1e-3));
        }
    }
}

TEST_CASE("second variation formula rejects nonstationary graphs") {
    IntrinsicGraph g = graphs::poly({{0.0, 0.3}}, box);
    CHECK_THROWS_AS(second_variation_formula(g, centered_bump(), ConvexBody::disk(1.0)),
                    validation_error);
}

TEST_CASE("integration by parts residuals") {
    Bump2D bump = centered_bump();
    ConvexBody bodies[] = {ConvexBody::disk(1.0), ConvexBody::ellipse(2.0, 1.0), sampled_body()};

    // The plain identity holds on any graph, stationary or not.
    IntrinsicGraph any[] = {graphs::poly({{0.0, 0.3}}, box), graphs::xt_over_1px2(box)};
    for (const IntrinsicGraph& g : any) {
        for (const ConvexBody& body : bodies) {
            IbpResiduals r = integration_by_parts_residuals(g, bump, body);
            CHECK(std::abs(r.plain) < 1e-8);
        }
    }

    // The measure-weighted identities need stationarity.
    IntrinsicGraph stat[] = {graphs::xt_over_1px2(box), graphs::affine(0.4, -0.3, box)};
    for (const IntrinsicGraph& g : stat) {
        for (const ConvexBody& body : bodies) {
            IbpResiduals r = integration_by_parts_residuals(g, bump, body);
            CHECK(std::abs(r.dual) < 1e-6);
            CHECK(std::abs(r.tangent) < 1e-6);
        }
    }

    // Residuals shrink under quadrature refinement (they are discretization
    // error, not structural).  An off-center bump keeps the coarse residual
    // away from the symmetry cancellation of the node layout.
    IntrinsicGraph g = graphs::xt_over_1px2(box);
    Bump2D skew(Bump1D(0.3, 1.2), Bump1D(0.15, 0.6));
    QuadratureSpec coarse{2, 2, 2};
    QuadratureSpec fine{4, 4, 2};
    IbpResiduals rc = integration_by_parts_residuals(g, skew, ConvexBody::disk(1.0), coarse);
    IbpResiduals rf = integration_by_parts_residuals(g, skew, ConvexBody::disk(1.0), fine);
    CHECK(std::abs(rc.dual) > 1e-12);
    CHECK(std::abs(rf.dual) <= std::abs(rc.dual) / 2.0);
}
