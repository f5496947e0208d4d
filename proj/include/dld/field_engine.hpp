#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dld/descriptor.hpp"

namespace dld {

/// Rectangular window of the plane discretized into width x height pixels.
/// Needs xmin < xmax, ymin < ymax and at least 2 pixels per axis (the
/// gradient stencil wants neighbors).
class DomainSpec {
public:
    DomainSpec(double xmin, double xmax, double ymin, double ymax, int width, int height);

    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }
    double ymin() const { return ymin_; }
    double ymax() const { return ymax_; }
    int width() const { return width_; }
    int height() const { return height_; }

    /// Physical pixel pitch in plane units.
    double pitch_x() const { return (xmax_ - xmin_) / width_; }
    double pitch_y() const { return (ymax_ - ymin_) / height_; }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    double xmin_, xmax_, ymin_, ymax_;
    int width_, height_;
};

enum class ValueKind : std::uint8_t {
    Descriptor = 0,
    GradientMagnitude = 1,
    RidgeMask = 2,
};

/// Row-major raster of scalar values over a domain; row 0 is the top of
/// the image (largest y).
struct FieldGrid {
    DomainSpec domain;
    ValueKind value_kind = ValueKind::Descriptor;
    std::vector<double> values;

    double at(int row, int col) const {
        return values[static_cast<std::size_t>(row) * domain.width() + col];
    }
    double& at(int row, int col) {
        return values[static_cast<std::size_t>(row) * domain.width() + col];
    }
};

/// Center coordinate of pixel (col, row). Throws std::out_of_range for
/// indices outside the grid.
ComplexValue sample_point(const DomainSpec& domain, int col, int row);

enum class Kernel { Sphere, PlanarForward };

/// Canonical quiet NaN (zero payload); the raster encoding of the planar
/// kernel's invalid marker.
double quiet_nan() noexcept;

/// Descriptor value at every pixel center. `workers` caps the thread count
/// (0 = hardware concurrency). Every pixel is an independent pure-function
/// evaluation written to its own slot, so the output is byte-identical for
/// any worker count.
FieldGrid evaluate_field(const MapSpec& spec, const DomainSpec& domain,
                         const DescriptorParams& params, Kernel kernel,
                         unsigned workers = 0);

/// sqrt(gx^2 + gy^2) with central differences inside, one-sided at the
/// borders, both scaled by the physical pixel pitch. NaN inputs propagate.
/// Input must be a Descriptor field.
FieldGrid gradient_magnitude(const FieldGrid& field);

/// Binary mask of pixels whose gradient magnitude reaches the given
/// percentile of the finite values (nearest-rank rule, 0 < percentile < 100).
/// NaN pixels map to 0. Input must be a GradientMagnitude field with at
/// least one finite value.
FieldGrid extract_ridges(const FieldGrid& grad, double percentile);

/// Nearest-rank percentile of an ascending-sorted, non-empty sample:
/// element number ceil(percentile * n / 100), counting from 1.
double percentile_nearest_rank(std::span<const double> sorted, double percentile);

}  // namespace dld
