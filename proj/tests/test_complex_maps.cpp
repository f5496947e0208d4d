#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dld/complex_maps.hpp"
#include "dld/presets.hpp"

using dld::ComplexValue;
using dld::MapSpec;

TEST_SUITE("complex_maps") {

TEST_CASE("quadratic step on hand-checked values") {
    const MapSpec c_i = MapSpec::quadratic(ComplexValue::finite(0, 1));
    CHECK(map_step(c_i, ComplexValue::finite(0, 0)) == ComplexValue::finite(0, 1));

    // the parabolic point of c = 1/4 is exactly stationary
    const MapSpec c_q = MapSpec::quadratic(ComplexValue::finite(0.25, 0));
    CHECK(map_step(c_q, ComplexValue::finite(0.5, 0)) == ComplexValue::finite(0.5, 0));

    const MapSpec c_0 = MapSpec::quadratic(ComplexValue::finite(0, 0));
    CHECK(map_step(c_0, ComplexValue::finite(1, 1)) == ComplexValue::finite(0, 2));
}

TEST_CASE("newton step on hand-checked values") {
    const MapSpec nw = MapSpec::newton_cubic();
    CHECK(map_step(nw, ComplexValue::finite(1, 0)) == ComplexValue::finite(1, 0));

    const ComplexValue two = map_step(nw, ComplexValue::finite(2, 0));
    CHECK(std::fabs(two.re - 17.0 / 12.0) <= 1e-12);  // 2 - 7/12 by exact fractions
    CHECK(two.im == 0.0);

    CHECK(map_step(nw, ComplexValue::finite(0, 0)).at_infinity);
}

TEST_CASE("infinity is absorbing for both maps") {
    CHECK(map_step(MapSpec::quadratic(ComplexValue::finite(0.25, 0)), ComplexValue::infinity())
              .at_infinity);
    CHECK(map_step(MapSpec::newton_cubic(), ComplexValue::infinity()).at_infinity);
}

TEST_CASE("overflowing quadratic results clamp to infinity") {
    const MapSpec c_0 = MapSpec::quadratic(ComplexValue::finite(0, 0));
    CHECK(map_step(c_0, ComplexValue::finite(1e100, 0)).at_infinity);
    CHECK(!map_step(c_0, ComplexValue::finite(1e74, 0)).at_infinity);
}

TEST_CASE("orbit of a fixed point stays put") {
    const MapSpec c_0 = MapSpec::quadratic(ComplexValue::finite(0, 0));
    const dld::OrbitTrace t = iterate_orbit(c_0, ComplexValue::finite(0, 0), 5);
    REQUIRE(t.points.size() == 6);
    for (const ComplexValue& z : t.points) CHECK(z == ComplexValue::finite(0, 0));
    for (const dld::SpherePoint& s : t.sphere_points) CHECK(s.xi3 == -1.0);
}

TEST_CASE("orbit of 2 under squaring") {
    const MapSpec c_0 = MapSpec::quadratic(ComplexValue::finite(0, 0));
    const dld::OrbitTrace t = iterate_orbit(c_0, ComplexValue::finite(2, 0), 3);
    REQUIRE(t.points.size() == 4);
    CHECK(t.points[0] == ComplexValue::finite(2, 0));
    CHECK(t.points[1] == ComplexValue::finite(4, 0));
    CHECK(t.points[2] == ComplexValue::finite(16, 0));
    CHECK(t.points[3] == ComplexValue::finite(256, 0));
}

TEST_CASE("period-2 cycle of c = -1 is exact") {
    const MapSpec basilica = MapSpec::quadratic(ComplexValue::finite(-1, 0));
    const dld::OrbitTrace t = iterate_orbit(basilica, ComplexValue::finite(0, 0), 4);
    REQUIRE(t.points.size() == 5);
    for (std::size_t k = 0; k < t.points.size(); ++k)
        CHECK(t.points[k] == ComplexValue::finite(k % 2 == 0 ? 0.0 : -1.0, 0.0));
}

TEST_CASE("orbit invariants hold step by step") {
    const MapSpec rabbit = MapSpec::quadratic(ComplexValue::finite(-0.123, 0.745));
    const dld::OrbitTrace t = iterate_orbit(rabbit, ComplexValue::finite(0.4, -0.2), 40);
    REQUIRE(t.points.size() == 41);
    REQUIRE(t.sphere_points.size() == 41);
    for (std::size_t k = 0; k + 1 < t.points.size(); ++k)
        CHECK(map_step(rabbit, t.points[k]) == t.points[k + 1]);
    for (std::size_t k = 0; k < t.points.size(); ++k)
        CHECK(to_sphere(t.points[k]) == t.sphere_points[k]);
}

TEST_CASE("orbit needs at least one step") {
    CHECK_THROWS_AS(iterate_orbit(MapSpec::newton_cubic(), ComplexValue::finite(1, 0), 0),
                    std::invalid_argument);
}

TEST_CASE("once at infinity an orbit never returns") {
    const MapSpec c_0 = MapSpec::quadratic(ComplexValue::finite(0, 0));
    const dld::OrbitTrace t = iterate_orbit(c_0, ComplexValue::finite(3, 0), 20);
    bool seen_infinity = false;
    for (const ComplexValue& z : t.points) {
        if (seen_infinity) CHECK(z.at_infinity);
        seen_infinity = seen_infinity || z.at_infinity;
    }
    CHECK(seen_infinity);
}

TEST_CASE("fixed points of the simple quadratics") {
    const auto c0 = known_fixed_points(MapSpec::quadratic(ComplexValue::finite(0, 0)));
    REQUIRE(c0.size() == 2);
    CHECK(c0[0] == ComplexValue::finite(1, 0));
    CHECK(c0[1] == ComplexValue::finite(0, 0));

    const auto cq = known_fixed_points(MapSpec::quadratic(ComplexValue::finite(0.25, 0)));
    REQUIRE(cq.size() == 2);
    CHECK(cq[0].re == 0.5);  // double root
    CHECK(cq[1].re == 0.5);
    CHECK(cq[0].im == 0.0);
}

TEST_CASE("fixed points of the newton map are the cube roots of unity") {
    const auto roots = known_fixed_points(MapSpec::newton_cubic());
    REQUIRE(roots.size() == 3);
    const double s = std::sqrt(3.0) / 2.0;
    CHECK(std::hypot(roots[0].re - 1.0, roots[0].im) <= 1e-12);
    CHECK(std::hypot(roots[1].re + 0.5, roots[1].im - s) <= 1e-12);
    CHECK(std::hypot(roots[2].re + 0.5, roots[2].im + s) <= 1e-12);
}

TEST_CASE("every catalogue fixed point is consistent under the map") {
    for (const dld::Preset& preset : dld::preset_catalogue()) {
        const MapSpec spec = preset.map();
        for (const ComplexValue& w : known_fixed_points(spec)) {
            const ComplexValue m = map_step(spec, w);
            REQUIRE(!m.at_infinity);
            CAPTURE(preset.name);
            CHECK(std::hypot(m.re - w.re, m.im - w.im) <= 1e-12);
        }
    }
}

TEST_CASE("newton map contracts a small ring around each root") {
    const MapSpec nw = MapSpec::newton_cubic();
    for (const ComplexValue& w : known_fixed_points(nw)) {
        for (int k = 0; k < 16; ++k) {
            const double a = 2.0 * 3.141592653589793 * k / 16;
            const ComplexValue z =
                ComplexValue::finite(w.re + 1e-3 * std::cos(a), w.im + 1e-3 * std::sin(a));
            const ComplexValue m = map_step(nw, z);
            REQUIRE(!m.at_infinity);
            CHECK(std::hypot(m.re - w.re, m.im - w.im) < 1e-3);
        }
    }
}

TEST_CASE("quadratic map spec requires a finite parameter") {
    CHECK_THROWS_AS(MapSpec::quadratic(ComplexValue::infinity()), std::invalid_argument);
}

}  // TEST_SUITE
