#include "subfinsler/heisenberg.hpp"

namespace subfinsler {

namespace {

FrameVector coefficient_derivative(const FrameField& field, double s, double h) {
    FrameVector fp = field(s + h);
    FrameVector fm = field(s - h);
    return {(fp.x - fm.x) / (2.0 * h), (fp.y - fm.y) / (2.0 * h), (fp.t - fm.t) / (2.0 * h)};
}

}  // namespace

FrameVector levi_civita_derivative(const FrameCurve& curve, const FrameField& field,
                                   double s, double fd_step) {
    FrameVector d = coefficient_derivative(field, s, fd_step);
    FrameVector v = curve.velocity(s);
    FrameVector w = field(s);
    // D_v (w.x X) = w.x (v.y T + v.t Y) etc., assembled from the frame table.
    return {d.x - v.t * w.y - v.y * w.t,
            d.y + v.t * w.x + v.x * w.t,
            d.t + v.y * w.x - v.x * w.y};
}

FrameVector pseudo_hermitian_derivative(const FrameCurve& curve, const FrameField& field,
                                        double s, double fd_step) {
    (void)curve;
    return coefficient_derivative(field, s, fd_step);
}

}  // namespace subfinsler
