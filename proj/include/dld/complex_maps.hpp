#pragma once

#include <vector>

#include "dld/riemann_sphere.hpp"

namespace dld {

enum class MapKind { Quadratic, NewtonCubic };

/// Immutable choice of iterated map: z^2 + c, or the Newton step for z^3 - 1.
class MapSpec {
public:
    static MapSpec quadratic(const ComplexValue& c);
    static MapSpec newton_cubic();

    MapKind kind() const { return kind_; }
    /// Quadratic parameter; meaningless for NewtonCubic.
    const ComplexValue& c() const { return c_; }

private:
    MapSpec(MapKind kind, ComplexValue c) : kind_(kind), c_(c) {}

    MapKind kind_;
    ComplexValue c_;
};

/// One iteration of the map on the extended plane. Total: infinity is
/// absorbing, the Newton step at 0 is infinity, and any result beyond the
/// overflow clamp is identified with infinity.
ComplexValue map_step(const MapSpec& spec, const ComplexValue& z) noexcept;

/// Forward orbit z0 .. zN together with its Riemann-sphere projections.
struct OrbitTrace {
    std::vector<ComplexValue> points;
    std::vector<SpherePoint> sphere_points;
};

/// Orbit of length n+1 from z0. Requires n >= 1.
OrbitTrace iterate_orbit(const MapSpec& spec, const ComplexValue& z0, int n);

/// Closed-form fixed points: the roots of z^2 - z + c = 0 for the quadratic
/// map (square root taken with nonnegative real part), the three cube roots
/// of unity for the Newton map. When an exactly stationary double lies
/// within two ulps of the formula value, that representative is returned.
std::vector<ComplexValue> known_fixed_points(const MapSpec& spec);

}  // namespace dld
