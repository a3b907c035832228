#pragma once

#include <memory>
#include <string>
#include <vector>

#include "subfinsler/heisenberg.hpp"

// Planar convex bodies given by their support function h(theta), with the
// norms they induce on the horizontal plane and the projection onto the
// boundary.  Bodies contain the origin in the interior (h > 0) and the
// geometric operations assume a C2 boundary with positive curvature,
// checked separately by validate_c2_plus.

namespace subfinsler {

class ConvexBody {
public:
    static ConvexBody disk(double r);
    static ConvexBody ellipse(double a, double b);
    // Samples of h on the uniform grid theta_k = 2*pi*k/N.  Evaluation uses the
    // trigonometric interpolant through the samples; derivatives are the exact
    // derivatives of the interpolant.
    static ConvexBody from_support_samples(const std::vector<double>& samples);

    double support(double theta) const;
    double support_d1(double theta) const;
    double support_d2(double theta) const;

    // Boundary point whose outer normal direction is theta.
    PlaneVector boundary_point(double theta) const;

    // Boundary point whose outer normal is v/|v| (v != 0).
    PlaneVector pi(const PlaneVector& v) const;

    // Minkowski gauge inf{ lambda > 0 : v in lambda K }.
    double gauge_norm(const PlaneVector& v) const;

    // Dual norm h(arg v) * |v|; equals <v, pi(v)>.
    double dual_norm(const PlaneVector& v) const;

    // Curvature of the boundary at the point with outer normal theta.
    double curvature(double theta) const;

    // min over a theta grid of h + h'' (the inverse curvature radius).
    double c2plus_margin(int grid = 4096) const;
    bool validate_c2_plus(double tol = 1e-8, int grid = 4096) const;

    const std::string& id() const { return id_; }

    struct Impl;

private:
    std::shared_ptr<const Impl> impl_;
    std::string id_;
    ConvexBody(std::shared_ptr<const Impl> impl, std::string id);
};

}  // namespace subfinsler
