#pragma once

#include <cmath>
#include <functional>

// Group operations, the left-invariant orthonormal frame {X, Y, T}, the
// almost-complex structure J on the horizontal distribution, the contact
// form, and covariant derivatives of frame-coefficient fields along curves.

namespace subfinsler {

// Point in coordinates (x, y, t).
struct HPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

// Tangent vector in coordinate components (d/dx, d/dy, d/dt).
struct CoordVector {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

// Tangent vector as coefficients against the frame {X, Y, T}.
struct FrameVector {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

// Vector in the horizontal plane, coefficients against {X, Y}.
struct PlaneVector {
    double x = 0.0;
    double y = 0.0;
};

inline HPoint group_mul(const HPoint& p, const HPoint& q) {
    return {p.x + q.x, p.y + q.y, p.t + q.t + q.x * p.y - p.x * q.y};
}

inline HPoint group_inv(const HPoint& p) { return {-p.x, -p.y, -p.t}; }

// Coordinate components of the frame at p: X = (1,0,y), Y = (0,1,-x), T = (0,0,1).
struct Frame {
    CoordVector X;
    CoordVector Y;
    CoordVector T;
};

inline Frame frame_at(const HPoint& p) {
    return {{1.0, 0.0, p.y}, {0.0, 1.0, -p.x}, {0.0, 0.0, 1.0}};
}

// Contact form omega = dt - y dx + x dy evaluated on a coordinate vector.
inline double contact_form(const HPoint& p, const CoordVector& v) {
    return v.t - p.y * v.x + p.x * v.y;
}

// Frame coefficients of a coordinate vector at p.  The T coefficient equals
// the contact form, the horizontal ones are the coordinate x/y components.
inline FrameVector to_frame(const HPoint& p, const CoordVector& v) {
    return {v.x, v.y, contact_form(p, v)};
}

inline CoordVector to_coords(const HPoint& p, const FrameVector& v) {
    return {v.x, v.y, v.t + v.x * p.y - v.y * p.x};
}

// J rotates the horizontal plane: J(X) = Y, J(Y) = -X, J(T) = 0.
inline FrameVector J_op(const FrameVector& v) { return {-v.y, v.x, 0.0}; }
inline PlaneVector J_op(const PlaneVector& v) { return {-v.y, v.x}; }

inline double dot(const FrameVector& a, const FrameVector& b) {
    return a.x * b.x + a.y * b.y + a.t * b.t;
}
inline double dot(const PlaneVector& a, const PlaneVector& b) {
    return a.x * b.x + a.y * b.y;
}
inline double norm(const FrameVector& v) { return std::sqrt(dot(v, v)); }
inline double norm(const PlaneVector& v) { return std::sqrt(dot(v, v)); }

inline FrameVector cross(const FrameVector& a, const FrameVector& b) {
    return {a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t, a.x * b.y - a.y * b.x};
}

inline FrameVector operator+(const FrameVector& a, const FrameVector& b) {
    return {a.x + b.x, a.y + b.y, a.t + b.t};
}
inline FrameVector operator-(const FrameVector& a, const FrameVector& b) {
    return {a.x - b.x, a.y - b.y, a.t - b.t};
}
inline FrameVector operator*(double s, const FrameVector& v) {
    return {s * v.x, s * v.y, s * v.t};
}

// Curve with velocity given in frame coefficients.
struct FrameCurve {
    std::function<HPoint(double)> point;
    std::function<FrameVector(double)> velocity;
};

// Field along a curve, given as frame coefficients per parameter value.
using FrameField = std::function<FrameVector(double)>;

// Levi-Civita covariant derivative of the field along the curve at parameter s.
// Uses the bracket table of the frame: the only nonzero derivatives are
// D_X Y = -T, D_Y X = T, D_X T = D_T X = Y, D_Y T = D_T Y = -X.
// Coefficient derivatives are taken by central differences with the given step.
FrameVector levi_civita_derivative(const FrameCurve& curve, const FrameField& field,
                                   double s, double fd_step = 1e-5);

// Pseudo-hermitian covariant derivative along a curve.  The frame is parallel
// for this connection, so the derivative is the plain coefficient derivative.
FrameVector pseudo_hermitian_derivative(const FrameCurve& curve, const FrameField& field,
                                        double s, double fd_step = 1e-5);

}  // namespace subfinsler
