#include "dld/presets.hpp"

namespace dld {

namespace {

// Both sign variants of the flower parameter are kept; they are complex
// conjugates and render mirror images of one another.
constexpr Preset kCatalogue[] = {
    {"unit-circle", MapKind::Quadratic, 0.0, 0.0, 1.0 / 64, 1000,
     "unit-circle Julia set"},
    {"dendrite", MapKind::Quadratic, 0.0, 1.0, 1.0 / 64, 200,
     "dendrite fractal"},
    {"cauliflower", MapKind::Quadratic, 0.25, 0.0, 0.25, 50,
     "cauliflower set, parabolic point at 1/2"},
    {"basilica", MapKind::Quadratic, -1.0, 0.0, 1.0 / 64, 1000,
     "San Marco basilica Julia set"},
    {"fat-basilica", MapKind::Quadratic, -0.75, 0.0, 0.25, 100,
     "fat basilica, parabolic"},
    {"rabbit", MapKind::Quadratic, -0.123, 0.745, 0.25, 50,
     "Douady rabbit"},
    {"open-cauliflower", MapKind::Quadratic, 0.285, 0.01, 0.25, 200,
     "open cauliflower fractal"},
    {"flower-minus", MapKind::Quadratic, -0.1, -0.651, 0.25, 200,
     "flower-type fractal"},
    {"flower-plus", MapKind::Quadratic, -0.1, 0.651, 0.25, 200,
     "flower-type fractal, conjugate parameter"},
    {"siegel-disk", MapKind::Quadratic, -0.391, -0.587, 0.25, 200,
     "Siegel disk fractal"},
    {"newton", MapKind::NewtonCubic, 0.0, 0.0, 0.25, 100,
     "Newton basins for z^3 - 1"},
};

}  // namespace

MapSpec Preset::map() const {
    if (kind == MapKind::NewtonCubic) return MapSpec::newton_cubic();
    return MapSpec::quadratic(ComplexValue::finite(c_re, c_im));
}

std::span<const Preset> preset_catalogue() { return kCatalogue; }

const Preset* find_preset(std::string_view name) {
    for (const Preset& p : kCatalogue)
        if (name == p.name) return &p;
    return nullptr;
}

}  // namespace dld
