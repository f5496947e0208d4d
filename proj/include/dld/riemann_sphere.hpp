#pragma once

#include <cmath>

namespace dld {

// Coordinates with |re| or |im| above this bound are identified with the
// point at infinity before any squaring can leave double range.
inline constexpr double kOverflowClamp = 1e150;

// from_sphere reads points with xi3 >= 1 - kPoleTolerance as infinity;
// closer to the pole the 1/(1 - xi3) division is no longer trustworthy.
inline constexpr double kPoleTolerance = 1e-12;

/// A point of the extended complex plane. When `at_infinity` is set, the
/// re/im fields carry no meaning and must be ignored.
struct ComplexValue {
    double re = 0.0;
    double im = 0.0;
    bool at_infinity = false;

    /// Finite plane point; rejects NaN and infinite coordinates.
    static ComplexValue finite(double re, double im);
    static ComplexValue infinity() { return {0.0, 0.0, true}; }

    bool is_finite() const { return !at_infinity; }

    friend bool operator==(const ComplexValue& a, const ComplexValue& b) {
        if (a.at_infinity || b.at_infinity) return a.at_infinity && b.at_infinity;
        return a.re == b.re && a.im == b.im;
    }
};

/// Cartesian point on the unit sphere. The north pole (0,0,1) represents
/// the point at infinity.
struct SpherePoint {
    double xi1 = 0.0;
    double xi2 = 0.0;
    double xi3 = 0.0;

    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// Inverse stereographic projection: plane point to unit sphere.
/// Total: infinity (and anything beyond the overflow clamp) lands exactly
/// on the north pole. Never produces NaN.
SpherePoint to_sphere(const ComplexValue& z) noexcept;

/// Stereographic projection: sphere point to plane, (xi1 + xi2 i)/(1 - xi3).
/// Points within kPoleTolerance of the north pole come back as infinity.
/// Throws std::invalid_argument if |xi|^2 deviates from 1 by more than 1e-9.
ComplexValue from_sphere(const SpherePoint& xi);

/// l^p step length between two sphere points: sum_j |a_j - b_j|^p.
/// Requires 0 < p <= 1 (validated where p is configured); bounded by 3*2^p.
double sphere_step_norm(const SpherePoint& a, const SpherePoint& b, double p) noexcept;

}  // namespace dld
