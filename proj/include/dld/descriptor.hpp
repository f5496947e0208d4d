#pragma once

#include <optional>

#include "dld/complex_maps.hpp"

namespace dld {

/// Norm exponent p in (0,1] and iteration count n >= 1; rejected at
/// construction otherwise.
class DescriptorParams {
public:
    DescriptorParams(double p, int n);

    double p() const { return p_; }
    int n() const { return n_; }

private:
    double p_;
    int n_;
};

/// Forward descriptor on the Riemann sphere:
///   sum_{k=0}^{N-1} sum_{j=1}^{3} |xi_j^(k+1) - xi_j^(k)|^p
/// over the orbit's sphere projections. Finite and nonnegative for every
/// input (bounded by 3*N*2^p); exactly zero on a stationary orbit.
double dld_sphere(const MapSpec& spec, const ComplexValue& z0,
                  const DescriptorParams& params) noexcept;

/// Planar forward descriptor, sum_{k=0}^{N-1} |x_{k+1}-x_k|^p + |y_{k+1}-y_k|^p.
/// Returns nullopt when the orbit reaches infinity or the sum overflows;
/// that marker is an expected output for escaping orbits, not a fault.
std::optional<double> dld_planar_forward(const MapSpec& spec, const ComplexValue& z0,
                                         const DescriptorParams& params) noexcept;

}  // namespace dld
