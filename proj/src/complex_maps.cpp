#include "dld/complex_maps.hpp"

#include <complex>
#include <stdexcept>

namespace dld {

namespace {

ComplexValue clamp_result(double x, double y) noexcept {
    if (!(std::fabs(x) <= kOverflowClamp) || !(std::fabs(y) <= kOverflowClamp))
        return ComplexValue::infinity();
    return {x, y, false};
}

double ulp_offset(double v, int k) {
    double r = v;
    for (; k > 0; --k) r = std::nextafter(r, 1e308);
    for (; k < 0; ++k) r = std::nextafter(r, -1e308);
    return r;
}

// A formula value one ulp off a fixed point is generally not stationary
// under the floating-point map; prefer an exactly stationary double when
// one exists in the immediate neighborhood.
ComplexValue snap_to_stationary(const MapSpec& spec, const ComplexValue& w) {
    double best = -1.0;
    ComplexValue pick = w;
    for (int i = -2; i <= 2; ++i) {
        for (int j = -2; j <= 2; ++j) {
            const ComplexValue cand{ulp_offset(w.re, i), ulp_offset(w.im, j), false};
            if (map_step(spec, cand) == cand) {
                const double d = std::hypot(cand.re - w.re, cand.im - w.im);
                if (best < 0.0 || d < best) {
                    best = d;
                    pick = cand;
                }
            }
        }
    }
    return pick;
}

}  // namespace

MapSpec MapSpec::quadratic(const ComplexValue& c) {
    if (c.at_infinity)
        throw std::invalid_argument("MapSpec::quadratic: parameter c must be finite");
    return {MapKind::Quadratic, c};
}

MapSpec MapSpec::newton_cubic() {
    return {MapKind::NewtonCubic, ComplexValue{}};
}

ComplexValue map_step(const MapSpec& spec, const ComplexValue& z) noexcept {
    if (z.at_infinity) return ComplexValue::infinity();
    if (spec.kind() == MapKind::Quadratic) {
        const double x = z.re * z.re - z.im * z.im + spec.c().re;
        const double y = 2.0 * z.re * z.im + spec.c().im;
        return clamp_result(x, y);
    }
    // Newton step for z^3 - 1 as the single fraction 2z/3 + 1/(3z^2); the
    // difference form z - (z^3-1)/(3z^2) dithers by one ulp at the roots
    // and overflows z^3 well inside the clamp domain.
    if (z.re == 0.0 && z.im == 0.0) return ComplexValue::infinity();
    const std::complex<double> w(z.re, z.im);
    const std::complex<double> next = 2.0 * w / 3.0 + 1.0 / (3.0 * w * w);
    return clamp_result(next.real(), next.imag());
}

OrbitTrace iterate_orbit(const MapSpec& spec, const ComplexValue& z0, int n) {
    if (n < 1) throw std::invalid_argument("iterate_orbit: need n >= 1");
    OrbitTrace trace;
    trace.points.reserve(static_cast<std::size_t>(n) + 1);
    trace.sphere_points.reserve(static_cast<std::size_t>(n) + 1);
    ComplexValue z = z0;
    trace.points.push_back(z);
    trace.sphere_points.push_back(to_sphere(z));
    for (int k = 0; k < n; ++k) {
        z = map_step(spec, z);
        trace.points.push_back(z);
        trace.sphere_points.push_back(to_sphere(z));
    }
    return trace;
}

std::vector<ComplexValue> known_fixed_points(const MapSpec& spec) {
    std::vector<ComplexValue> out;
    if (spec.kind() == MapKind::NewtonCubic) {
        const double s = std::sqrt(3.0) / 2.0;
        out.push_back(ComplexValue::finite(1.0, 0.0));
        out.push_back(ComplexValue::finite(-0.5, s));
        out.push_back(ComplexValue::finite(-0.5, -s));
    } else {
        const std::complex<double> c(spec.c().re, spec.c().im);
        // principal sqrt has nonnegative real part
        const std::complex<double> root = std::sqrt(1.0 - 4.0 * c);
        const std::complex<double> wp = (1.0 + root) / 2.0;
        const std::complex<double> wm = (1.0 - root) / 2.0;
        out.push_back(ComplexValue::finite(wp.real(), wp.imag()));
        out.push_back(ComplexValue::finite(wm.real(), wm.imag()));
    }
    for (auto& w : out) w = snap_to_stationary(spec, w);
    return out;
}

}  // namespace dld
