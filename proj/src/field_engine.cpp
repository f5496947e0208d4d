#include "dld/field_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace dld {

DomainSpec::DomainSpec(double xmin, double xmax, double ymin, double ymax, int width,
                       int height)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), width_(width), height_(height) {
    if (!(std::isfinite(xmin) && std::isfinite(xmax) && std::isfinite(ymin) &&
          std::isfinite(ymax)))
        throw std::invalid_argument("DomainSpec: window bounds must be finite");
    if (!(xmin < xmax) || !(ymin < ymax))
        throw std::invalid_argument("DomainSpec: need xmin < xmax and ymin < ymax");
    if (width < 2 || height < 2)
        throw std::invalid_argument("DomainSpec: need at least 2 pixels per axis");
}

ComplexValue sample_point(const DomainSpec& domain, int col, int row) {
    if (col < 0 || col >= domain.width() || row < 0 || row >= domain.height())
        throw std::out_of_range("sample_point: pixel index outside the grid");
    const double x =
        domain.xmin() + (col + 0.5) * (domain.xmax() - domain.xmin()) / domain.width();
    const double y =
        domain.ymax() - (row + 0.5) * (domain.ymax() - domain.ymin()) / domain.height();
    return ComplexValue::finite(x, y);
}

double quiet_nan() noexcept {
    return std::bit_cast<double>(UINT64_C(0x7ff8000000000000));
}

namespace {

double pixel_value(const MapSpec& spec, const DomainSpec& domain,
                   const DescriptorParams& params, Kernel kernel, int col, int row) {
    const ComplexValue z0 = sample_point(domain, col, row);
    if (kernel == Kernel::Sphere) return dld_sphere(spec, z0, params);
    const std::optional<double> v = dld_planar_forward(spec, z0, params);
    return v ? *v : quiet_nan();
}

}  // namespace

FieldGrid evaluate_field(const MapSpec& spec, const DomainSpec& domain,
                         const DescriptorParams& params, Kernel kernel, unsigned workers) {
    FieldGrid out{domain, ValueKind::Descriptor,
                  std::vector<double>(domain.pixel_count(), 0.0)};

    const int height = domain.height();
    const int width = domain.width();
    unsigned n = workers != 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(height));

    const auto run_rows = [&](int row_begin, int row_end) {
        for (int row = row_begin; row < row_end; ++row)
            for (int col = 0; col < width; ++col)
                out.at(row, col) = pixel_value(spec, domain, params, kernel, col, row);
    };

    if (n <= 1) {
        run_rows(0, height);
        return out;
    }

    // contiguous row blocks; every thread writes a disjoint slice
    std::vector<std::thread> pool;
    pool.reserve(n);
    const int base = height / static_cast<int>(n);
    const int extra = height % static_cast<int>(n);
    int row = 0;
    for (unsigned i = 0; i < n; ++i) {
        const int count = base + (static_cast<int>(i) < extra ? 1 : 0);
        pool.emplace_back(run_rows, row, row + count);
        row += count;
    }
    for (auto& t : pool) t.join();
    return out;
}

FieldGrid gradient_magnitude(const FieldGrid& field) {
    if (field.value_kind != ValueKind::Descriptor)
        throw std::invalid_argument("gradient_magnitude: input must be a descriptor field");
    const DomainSpec& d = field.domain;
    const double dx = d.pitch_x();
    const double dy = d.pitch_y();
    FieldGrid out{d, ValueKind::GradientMagnitude, std::vector<double>(d.pixel_count(), 0.0)};

    for (int row = 0; row < d.height(); ++row) {
        for (int col = 0; col < d.width(); ++col) {
            double gx, gy;
            if (col == 0)
                gx = (field.at(row, 1) - field.at(row, 0)) / dx;
            else if (col == d.width() - 1)
                gx = (field.at(row, col) - field.at(row, col - 1)) / dx;
            else
                gx = (field.at(row, col + 1) - field.at(row, col - 1)) / (2.0 * dx);
            if (row == 0)
                gy = (field.at(1, col) - field.at(0, col)) / dy;
            else if (row == d.height() - 1)
                gy = (field.at(row, col) - field.at(row - 1, col)) / dy;
            else
                gy = (field.at(row + 1, col) - field.at(row - 1, col)) / (2.0 * dy);
            out.at(row, col) = std::sqrt(gx * gx + gy * gy);
        }
    }
    return out;
}

double percentile_nearest_rank(std::span<const double> sorted, double percentile) {
    if (sorted.empty())
        throw std::invalid_argument("percentile_nearest_rank: empty sample");
    const double n = static_cast<double>(sorted.size());
    // multiply before dividing: percentile * n is exact for the usual
    // integer-valued percentiles, where percentile/100 is not
    auto rank = static_cast<std::size_t>(std::ceil(percentile * n / 100.0));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

FieldGrid extract_ridges(const FieldGrid& grad, double percentile) {
    if (grad.value_kind != ValueKind::GradientMagnitude)
        throw std::invalid_argument("extract_ridges: input must be a gradient field");
    if (!(percentile > 0.0 && percentile < 100.0))
        throw std::invalid_argument("extract_ridges: percentile must lie in (0, 100)");

    std::vector<double> finite;
    finite.reserve(grad.values.size());
    for (double v : grad.values)
        if (std::isfinite(v)) finite.push_back(v);
    if (finite.empty())
        throw std::invalid_argument("extract_ridges: grid has no finite values");
    std::sort(finite.begin(), finite.end());
    const double threshold = percentile_nearest_rank(finite, percentile);

    FieldGrid out{grad.domain, ValueKind::RidgeMask,
                  std::vector<double>(grad.domain.pixel_count(), 0.0)};
    for (std::size_t i = 0; i < grad.values.size(); ++i)
        out.values[i] = (std::isfinite(grad.values[i]) && grad.values[i] >= threshold) ? 1.0 : 0.0;
    return out;
}

}  // namespace dld
