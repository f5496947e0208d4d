#include "dld/riemann_sphere.hpp"

#include <stdexcept>

namespace dld {

ComplexValue ComplexValue::finite(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw std::invalid_argument("ComplexValue::finite: coordinates must be finite");
    return {re, im, false};
}

SpherePoint to_sphere(const ComplexValue& z) noexcept {
    // The negated comparisons also send NaN coordinates to the pole, so the
    // projection stays total no matter what arrives.
    if (z.at_infinity || !(std::fabs(z.re) <= kOverflowClamp) ||
        !(std::fabs(z.im) <= kOverflowClamp))
        return {0.0, 0.0, 1.0};
    const double r2 = z.re * z.re + z.im * z.im;
    const double d = r2 + 1.0;
    return {2.0 * z.re / d, 2.0 * z.im / d, (r2 - 1.0) / d};
}

ComplexValue from_sphere(const SpherePoint& xi) {
    const double norm2 = xi.xi1 * xi.xi1 + xi.xi2 * xi.xi2 + xi.xi3 * xi.xi3;
    if (!(std::fabs(norm2 - 1.0) <= 1e-9))
        throw std::invalid_argument("from_sphere: point is not on the unit sphere");
    if (xi.xi3 >= 1.0 - kPoleTolerance) return ComplexValue::infinity();
    if (xi.xi3 <= 0.0) {
        const double d = 1.0 - xi.xi3;
        return ComplexValue::finite(xi.xi1 / d, xi.xi2 / d);
    }
    // On the sphere 1 - xi3 equals (xi1^2 + xi2^2)/(1 + xi3); the rewritten
    // denominator keeps full precision in the upper hemisphere, where the
    // direct subtraction cancels.
    const double h2 = xi.xi1 * xi.xi1 + xi.xi2 * xi.xi2;
    if (h2 == 0.0) return ComplexValue::infinity();
    const double scale = (1.0 + xi.xi3) / h2;
    return ComplexValue::finite(xi.xi1 * scale, xi.xi2 * scale);
}

double sphere_step_norm(const SpherePoint& a, const SpherePoint& b, double p) noexcept {
    return std::pow(std::fabs(a.xi1 - b.xi1), p) +
           std::pow(std::fabs(a.xi2 - b.xi2), p) +
           std::pow(std::fabs(a.xi3 - b.xi3), p);
}

}  // namespace dld
