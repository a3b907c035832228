#pragma once

#include <functional>
#include <optional>

#include "subfinsler/bump.hpp"
#include "subfinsler/convex_body.hpp"
#include "subfinsler/graph_surface.hpp"

// Variations of graph surfaces: compactly supported fields given by frame
// coefficients, the flowed surfaces, the area of a parametrized surface, and
// the first and second variation of the area both by finite differences of
// the flowed area and by the integrand formulas.

namespace subfinsler {

// Field along the surface, stored as frame coefficients at the point over
// (x, t), together with the parameter rectangle containing its support.
class VariationField {
public:
    static VariationField from_coeffs(std::function<FrameVector(double, double)> coeffs,
                                      Domain2D support);

    // bump * (uZ Z + uNu nu + uT T) in the frame of the graph at each point.
    static VariationField surface_frame_field(const IntrinsicGraph& g, double uZ, double uNu,
                                              double uT, const Bump2D& bump);

    // bump * Y: the flow of this field moves the graph of u to the graph of
    // u + s * bump over the same parameters.
    static VariationField vertical(const IntrinsicGraph& g, const Bump2D& bump);

    // f * nu with f = bump: the horizontal normal field of the second
    // variation theory.
    static VariationField horizontal_normal(const IntrinsicGraph& g, const Bump2D& bump);

    FrameVector operator()(double x, double t) const { return coeffs_(x, t); }
    const Domain2D& support() const { return support_; }

private:
    std::function<FrameVector(double, double)> coeffs_;
    Domain2D support_;
};

struct ParamSurface {
    Domain2D dom;
    std::function<HPoint(double, double)> point;
    std::function<CoordVector(double, double)> dx;
    std::function<CoordVector(double, double)> dt;
};

ParamSurface as_param_surface(const IntrinsicGraph& g);

// Moves every point along the field value frozen at its start: the flow of a
// frame-constant field is the right translation by (s f, s g, s h), which is
// exact.  Parameter derivatives come from the product rule, with the field
// coefficients differentiated by central differences.
ParamSurface flow_surface(const ParamSurface& base, const VariationField& field, double s,
                          double coeff_fd_step = 1e-5);

// integral of the dual norm of the horizontal part of d1 x d2 over the
// region (default: the full parameter domain).
double area_param(const ParamSurface& surf, const ConvexBody& body,
                  const QuadratureSpec& quad = {},
                  const std::optional<Domain2D>& region = std::nullopt);

// Central difference (A(s) - A(-s)) / 2s of the flowed area, restricted to
// the field support.
double first_variation_fd(const IntrinsicGraph& g, const VariationField& field,
                          const ConvexBody& body, const QuadratureSpec& quad = {},
                          double ds = 1e-3);

// integral of <U, N> H_K dS.
double first_variation_formula(const IntrinsicGraph& g, const VariationField& field,
                               const ConvexBody& body, const QuadratureSpec& quad = {});

// Vertical-perturbation route: d/ds A(Gr(u + s v)) = integral of
// (v_x + 2 v u_t + 2 u v_t) F(p), where F(x) = pi_1(x,-1) + x d pi_1/dx - d pi_2/dx.
double first_variation_graph(const IntrinsicGraph& g, const Bump2D& v, const ConvexBody& body,
                             const QuadratureSpec& quad = {}, double pi_fd_step = 1e-6);

// q = 4 (Z(<N,T>/|N_h|) - <N,T>^2/|N_h|^2), the potential of the second
// variation form.
double q_function(const IntrinsicGraph& g, double x, double t, double step = 1e-5);

// integral of (Z(f)^2 + q f^2) |N_h| / kappa(pi(nu)) dS for f = bump; the
// graph must be stationary.
double second_variation_formula(const IntrinsicGraph& g, const Bump2D& f, const ConvexBody& body,
                                const QuadratureSpec& quad = {},
                                double stationarity_tol = 1e-6);

// Second difference of the flowed area along U = f nu, Richardson-extrapolated.
double second_variation_fd(const IntrinsicGraph& g, const Bump2D& f, const ConvexBody& body,
                           const QuadratureSpec& quad = {}, double ds = 1e-3);

struct IbpResiduals {
    // integral of (Z(h) - 2 <N,T>/|N_h| h) |N_h| dS: zero on any graph.
    double plain = 0.0;
    // Same against the dual-norm measure ||N_h||_* dS: zero on stationary graphs.
    double dual = 0.0;
    // integral of (pi_nu E(h) + pi_Z theta(E) h) dS: zero on stationary graphs.
    double tangent = 0.0;
};

IbpResiduals integration_by_parts_residuals(const IntrinsicGraph& g, const Bump2D& h,
                                            const ConvexBody& body,
                                            const QuadratureSpec& quad = {});

}  // namespace subfinsler
