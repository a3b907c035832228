#pragma once

#include <functional>
#include <vector>

// Composite Gauss-Legendre quadrature on intervals and rectangles.

namespace subfinsler {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Nodes and weights computed by Newton iteration on the Legendre polynomial.
const GaussRule& gauss_legendre(int n);

struct QuadratureSpec {
    int cells_x = 8;
    int cells_y = 8;
    int nodes = 16;  // per axis per cell

    QuadratureSpec refined(int factor) const {
        return {cells_x * factor, cells_y * factor, nodes};
    }
};

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int cells = 8, int nodes = 16);

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, const QuadratureSpec& spec = {});

}  // namespace subfinsler
