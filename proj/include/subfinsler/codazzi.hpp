#pragma once

#include <vector>

#include "subfinsler/graph_surface.hpp"

// The scalar equation y'' = 6 y' y - 4 y^3 satisfied along the rulings of a
// stationary graph by y = <N,T>/|N_h|, its closed-form solutions
// y_{a,b}(s) = (a - (2a^2-b)s) / (1 - 2as + (2a^2-b)s^2), the first integral
// y^2 - y' = (a^2-b)/den^2, and the classification of entire solutions.

namespace subfinsler {

double codazzi_denominator(double a, double b, double s);
double codazzi_closed_form(double a, double b, double s);
double codazzi_closed_form_d1(double a, double b, double s);
double codazzi_closed_form_d2(double a, double b, double s);

struct CodazziClassification {
    bool entire = false;
    // Poles of the solution adjacent to s = 0 (infinities when absent).
    double pole_lo = 0.0;
    double pole_hi = 0.0;
};

// Entire iff a^2 - b > 0 or (a, b) = (0, 0); otherwise the denominator has
// real roots and the nearest ones on each side of 0 are reported.
CodazziClassification classify_global(double a, double b);

struct CodazziSolution {
    double a = 0.0, b = 0.0, step = 0.0;
    std::vector<double> s, y, dy;
    bool truncated_lo = false;  // stopped before s_min (pole or blow-up)
    bool truncated_hi = false;
};

// Fixed-step RK4 of the second-order equation from y(0) = a, y'(0) = b.
// Stops one step before a pole of the closed form and guards |y| <= 1e9.
CodazziSolution integrate_codazzi(double a, double b, double s_min, double s_max,
                                  double step = 1e-4);

// max over the samples of |(y^2 - y') - (a^2 - b)/den^2|.
double first_integral_residual(const CodazziSolution& sol);

struct SurfaceCodazziCheck {
    double lambda = 1.0;          // sqrt(1 + b(eps)^2), the arc-length scaling
    double max_ode_residual = 0.0;  // FD residual of y(sbar) on the arc-length ruling
    double gap_y0 = 0.0;            // |lambda y(0) - a'/2|
    double gap_dy0 = 0.0;           // |lambda^2 y'(0) - (a'^2/2 - b')|
    double max_closed_form_gap = 0.0;  // vs y_{a'/2, a'^2/2 - b'} after undoing the scaling
};

// Samples y = <N,T>/|N_h| along the arc-length reversed ruling through
// (0, eps) of a stationary graph and checks it against the equation.  The
// initial data are stated in the unit-x-speed parametrization, so the
// arc-length scaling lambda is undone before comparing.
SurfaceCodazziCheck codazzi_residual_on_surface(const IntrinsicGraph& g, double eps,
                                                double sbar_max = 1.0, double step = 1e-4,
                                                double ruling_fd_step = 1e-5);

}  // namespace subfinsler
