#include "dld/descriptor.hpp"

#include <stdexcept>

namespace dld {

DescriptorParams::DescriptorParams(double p, int n) : p_(p), n_(n) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("DescriptorParams: p must lie in (0, 1]");
    if (n < 1) throw std::invalid_argument("DescriptorParams: n must be >= 1");
}

double dld_sphere(const MapSpec& spec, const ComplexValue& z0,
                  const DescriptorParams& params) noexcept {
    ComplexValue z = z0;
    SpherePoint prev = to_sphere(z);
    double sum = 0.0;
    for (int k = 0; k < params.n(); ++k) {
        z = map_step(spec, z);
        const SpherePoint cur = to_sphere(z);
        sum += sphere_step_norm(prev, cur, params.p());
        prev = cur;
        // Infinity is absorbing and projects to exactly (0,0,1), so every
        // remaining term is exactly zero; stopping here is bit-identical
        // to summing them.
        if (z.at_infinity) break;
    }
    return sum;
}

std::optional<double> dld_planar_forward(const MapSpec& spec, const ComplexValue& z0,
                                         const DescriptorParams& params) noexcept {
    if (z0.at_infinity) return std::nullopt;
    ComplexValue z = z0;
    double px = z.re;
    double py = z.im;
    double sum = 0.0;
    for (int k = 0; k < params.n(); ++k) {
        z = map_step(spec, z);
        if (z.at_infinity) return std::nullopt;
        sum += std::pow(std::fabs(z.re - px), params.p()) +
               std::pow(std::fabs(z.im - py), params.p());
        px = z.re;
        py = z.im;
    }
    if (!std::isfinite(sum)) return std::nullopt;
    return sum;
}

}  // namespace dld
