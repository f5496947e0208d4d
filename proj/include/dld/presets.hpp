#pragma once

#include <span>
#include <string_view>

#include "dld/complex_maps.hpp"

namespace dld {

/// Named map configuration with the norm exponent and iteration count that
/// render it well.
struct Preset {
    const char* name;
    MapKind kind;
    double c_re;
    double c_im;
    double p;
    int n;
    const char* blurb;

    MapSpec map() const;
};

/// The full catalogue, in display order.
std::span<const Preset> preset_catalogue();

/// Lookup by name; nullptr if unknown.
const Preset* find_preset(std::string_view name);

}  // namespace dld
