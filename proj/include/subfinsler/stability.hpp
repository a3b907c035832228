#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subfinsler/characteristic.hpp"
#include "subfinsler/convex_body.hpp"
#include "subfinsler/variation.hpp"

// The stability quadratic form Q(f) = integral of (Z(f)^2 + q f^2) |N_h|/kappa dS
// on stationary graphs, a search for destabilizing directions over a
// tensor-product bump basis in characteristic coordinates (x, eps), the 1-d
// Hardy-type gap underlying the planarity argument, and the verdict pipeline.

namespace subfinsler {

// Q(f) for a tensor bump (analytic Z(f)); identical integrand to
// second_variation_formula.
double stability_form(const IntrinsicGraph& g, const ConvexBody& body, const Bump2D& f,
                      const QuadratureSpec& quad = {});

// Q(f) for a general scalar field with Z(f) by finite differences along
// characteristics; used to re-check eigen-search witnesses independently.
double stability_form_general(const IntrinsicGraph& g, const ConvexBody& body,
                              const std::function<double(double, double)>& f,
                              const Domain2D& support, const QuadratureSpec& quad = {},
                              double z_step = 1e-5);

struct HardyWitness {
    std::function<double(double)> psi;
    std::function<double(double)> dpsi;
    double s_lo = 0.0, s_hi = 0.0;
};

// gap = integral of psi'^2 h - (2B - A^2) integral of psi^2 / h over the
// support, h(s) = 1 + A s + B s^2/2; h must be positive there (checked).
double hardy_gap(double A, double B, const HardyWitness& w, int cells = 64, int nodes = 16);

struct StabilitySearchOptions {
    int n_x = 12;
    int n_eps = 12;
    int nodes_per_cell = 8;
    int max_refine = 2;
    double eig_change_tol = 0.05;  // relative change accepted as converged
    double stationarity_tol = 1e-6;
    int ruling_samples = 65;
};

struct DestabilizeResult {
    double min_eigenvalue = 0.0;
    bool converged = false;
    int n_x = 0, n_eps = 0;
    double x_lo = 0.0, x_hi = 0.0;
    double eps_lo = 0.0, eps_hi = 0.0;
    std::vector<double> coeffs;  // row-major i * n_eps + j, max-normalized
    double quadratic_value = 0.0;  // c^T Q c for the normalized witness
    double mass_value = 0.0;       // c^T M c
    double direct_q = 0.0;         // witness re-evaluated by direct quadrature
};

// Minimizes Q over span{phi_i(x) psi_j(eps)} against the weighted mass,
// refining the basis until the smallest eigenvalue stabilizes.
DestabilizeResult find_destabilizing(const IntrinsicGraph& g, const ConvexBody& body,
                                     const StabilitySearchOptions& opts = {});

// Evaluates the witness of a search result at (x, t).
std::function<double(double, double)> witness_function(const IntrinsicGraph& g,
                                                       const DestabilizeResult& r);

struct RulingSample {
    double eps = 0.0;
    double a = 0.0, b = 0.0;
    double A = 0.0, B = 0.0;  // A = -a', B = 2 b'
};

struct StabilityReport {
    std::string graph_id;
    std::string body_id;
    bool stationary = false;
    double stationarity_residual = 0.0;
    std::vector<RulingSample> ruling;
    bool planar = false;
    double planarity_residual = 0.0;  // distance of embedded points to a vertical plane
    bool searched = false;
    DestabilizeResult search;
    std::string verdict;  // "stable-planar" | "unstable" | "inconclusive"
};

struct ReportOptions {
    StabilitySearchOptions search;
    double planar_tol = 1e-6;      // on |a'| and |b'|
    double negative_tol = 1e-8;    // eigenvalue below -tol counts as unstable
    int ruling_report_samples = 17;
};

StabilityReport bernstein_report(const IntrinsicGraph& g, const ConvexBody& body,
                                 const ReportOptions& opts = {});

// max distance of embedded grid points from the best-fit vertical plane.
double vertical_plane_residual(const IntrinsicGraph& g, int grid = 33);

}  // namespace subfinsler
