#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "dld/field_engine.hpp"

namespace dld {

/// LDF raster, little-endian:
///   "LDF1" | u32 width | u32 height | u8 value_kind | 3 zero bytes |
///   f64 xmin, xmax, ymin, ymax | width*height f64 values, row-major,
///   top row first. NaN is stored as the canonical quiet NaN (zero payload).
void write_ldf(const std::filesystem::path& path, const FieldGrid& grid);

/// Reads an LDF raster. Throws std::runtime_error on missing files, foreign
/// magic bytes, or size mismatches.
FieldGrid read_ldf(const std::filesystem::path& path);

/// Grayscale rendering of a grid as 16-bit values. Descriptor and gradient
/// fields are normalized robustly: finite values are clipped to their
/// [2nd, 98th] percentile range (nearest-rank) and scaled linearly; NaN
/// renders as 0. Ridge masks map 0/1 straight to 0/65535.
std::vector<std::uint16_t> normalized_gray16(const FieldGrid& grid);

/// Binary 16-bit portable graymap (P5, maxval 65535, big-endian samples).
void write_pgm16(const std::filesystem::path& path, const FieldGrid& grid);

/// Losslessly compressed true-color PNG using the same normalization and a
/// fixed monotone colormap (dark violet up to pale yellow).
void write_png(const std::filesystem::path& path, const FieldGrid& grid);

/// Orbit rows `k,re,im,xi1,xi2,xi3`, one header line, full round-trip
/// precision; the point at infinity prints as `inf` in re/im. Several
/// traces concatenate with k restarting at 0.
void write_orbit_csv(std::ostream& out, std::span<const OrbitTrace> traces);
void write_orbit_csv(const std::filesystem::path& path, std::span<const OrbitTrace> traces);

}  // namespace dld
