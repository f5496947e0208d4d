#include "dld/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace dld {

namespace {

constexpr char kMagic[4] = {'L', 'D', 'F', '1'};

void push_u16le(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>(v >> 8));
}

void push_u32le(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void push_f64le(std::vector<unsigned char>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t take_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double take_f64le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
    return std::bit_cast<double>(bits);
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    const std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<unsigned char> bytes(static_cast<std::size_t>(size));
    in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw std::runtime_error("read failed: " + path.string());
    return bytes;
}

}  // namespace

void write_ldf(const std::filesystem::path& path, const FieldGrid& grid) {
    std::vector<unsigned char> bytes;
    bytes.reserve(48 + 8 * grid.values.size());
    bytes.insert(bytes.end(), kMagic, kMagic + 4);
    push_u32le(bytes, static_cast<std::uint32_t>(grid.domain.width()));
    push_u32le(bytes, static_cast<std::uint32_t>(grid.domain.height()));
    bytes.push_back(static_cast<unsigned char>(grid.value_kind));
    bytes.insert(bytes.end(), 3, 0);
    push_f64le(bytes, grid.domain.xmin());
    push_f64le(bytes, grid.domain.xmax());
    push_f64le(bytes, grid.domain.ymin());
    push_f64le(bytes, grid.domain.ymax());
    for (double v : grid.values) push_f64le(bytes, std::isnan(v) ? quiet_nan() : v);
    write_file(path, bytes);
}

FieldGrid read_ldf(const std::filesystem::path& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    if (bytes.size() < 48 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw std::runtime_error("not an LDF file: " + path.string());
    const std::uint32_t width = take_u32le(bytes.data() + 4);
    const std::uint32_t height = take_u32le(bytes.data() + 8);
    const unsigned char kind_byte = bytes[12];
    if (kind_byte > 2)
        throw std::runtime_error("corrupt LDF file (unknown value kind): " + path.string());
    if (width < 2 || height < 2 || width > (1u << 20) || height > (1u << 20) ||
        static_cast<std::uint64_t>(width) * height > (1u << 28))
        throw std::runtime_error("corrupt LDF file (bad dimensions): " + path.string());
    const std::size_t expected = 48 + 8 * static_cast<std::size_t>(width) * height;
    if (bytes.size() != expected)
        throw std::runtime_error("truncated or corrupt LDF file: " + path.string());

    const double xmin = take_f64le(bytes.data() + 16);
    const double xmax = take_f64le(bytes.data() + 24);
    const double ymin = take_f64le(bytes.data() + 32);
    const double ymax = take_f64le(bytes.data() + 40);
    try {
        FieldGrid grid{DomainSpec(xmin, xmax, ymin, ymax, static_cast<int>(width),
                                  static_cast<int>(height)),
                       static_cast<ValueKind>(kind_byte), {}};
        grid.values.resize(static_cast<std::size_t>(width) * height);
        for (std::size_t i = 0; i < grid.values.size(); ++i)
            grid.values[i] = take_f64le(bytes.data() + 48 + 8 * i);
        return grid;
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("corrupt LDF file (" + std::string(e.what()) +
                                 "): " + path.string());
    }
}

namespace {

// Per-pixel brightness in [0,1]. NaN renders as 0; a flat field renders
// as all zeros; masks pass through untouched.
std::vector<double> normalized_unit(const FieldGrid& grid) {
    std::vector<double> t(grid.values.size(), 0.0);
    if (grid.value_kind == ValueKind::RidgeMask) {
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = (std::isfinite(grid.values[i]) && grid.values[i] >= 0.5) ? 1.0 : 0.0;
        return t;
    }
    std::vector<double> finite;
    finite.reserve(grid.values.size());
    for (double v : grid.values)
        if (std::isfinite(v)) finite.push_back(v);
    if (finite.empty()) return t;
    std::sort(finite.begin(), finite.end());
    const double lo = percentile_nearest_rank(finite, 2.0);
    const double hi = percentile_nearest_rank(finite, 98.0);
    if (!(hi > lo)) return t;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double v = grid.values[i];
        if (!std::isfinite(v)) continue;
        t[i] = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
    }
    return t;
}

}  // namespace

std::vector<std::uint16_t> normalized_gray16(const FieldGrid& grid) {
    const std::vector<double> t = normalized_unit(grid);
    std::vector<std::uint16_t> gray(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        gray[i] = static_cast<std::uint16_t>(std::lround(t[i] * 65535.0));
    return gray;
}

void write_pgm16(const std::filesystem::path& path, const FieldGrid& grid) {
    const std::vector<std::uint16_t> gray = normalized_gray16(grid);
    char header[64];
    const int header_len = std::snprintf(header, sizeof header, "P5\n%d %d\n65535\n",
                                         grid.domain.width(), grid.domain.height());
    std::vector<unsigned char> bytes;
    bytes.reserve(static_cast<std::size_t>(header_len) + 2 * gray.size());
    bytes.insert(bytes.end(), header, header + header_len);
    for (std::uint16_t g : gray) {
        bytes.push_back(static_cast<unsigned char>(g >> 8));  // most significant byte first
        bytes.push_back(static_cast<unsigned char>(g & 0xff));
    }
    write_file(path, bytes);
}

namespace {

std::uint32_t crc32(std::span<const unsigned char> data) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = 0xffffffffu;
    for (unsigned char b : data) c = table[(c ^ b) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

std::uint32_t adler32(std::span<const unsigned char> data) {
    std::uint32_t a = 1, b = 0;
    for (unsigned char byte : data) {
        a = (a + byte) % 65521u;
        b = (b + a) % 65521u;
    }
    return (b << 16) | a;
}

void push_u32be(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void push_chunk(std::vector<unsigned char>& out, const char type[4],
                std::span<const unsigned char> data) {
    push_u32be(out, static_cast<std::uint32_t>(data.size()));
    std::vector<unsigned char> body(type, type + 4);
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    push_u32be(out, crc32(body));
}

// zlib stream around uncompressed deflate blocks; lossless and
// deterministic with no external dependency
std::vector<unsigned char> zlib_store(std::span<const unsigned char> raw) {
    std::vector<unsigned char> out;
    out.reserve(raw.size() + raw.size() / 65535 * 5 + 16);
    out.push_back(0x78);
    out.push_back(0x01);
    std::size_t pos = 0;
    do {
        const std::size_t len = std::min<std::size_t>(raw.size() - pos, 65535);
        const bool final = pos + len == raw.size();
        out.push_back(final ? 0x01 : 0x00);
        push_u16le(out, static_cast<std::uint16_t>(len));
        push_u16le(out, static_cast<std::uint16_t>(~len & 0xffff));
        out.insert(out.end(), raw.begin() + pos, raw.begin() + pos + len);
        pos += len;
    } while (pos < raw.size());
    push_u32be(out, adler32(raw));
    return out;
}

struct Rgb {
    unsigned char r, g, b;
};

// fixed monotone ramp, dark violet up to pale yellow
Rgb colormap(double t) {
    static constexpr double stops[5][3] = {
        {0, 0, 4}, {80, 18, 123}, {182, 54, 121}, {251, 136, 97}, {252, 253, 191}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(static_cast<int>(t), 3);
    const double f = t - i;
    auto mix = [&](int ch) {
        return static_cast<unsigned char>(
            std::lround(stops[i][ch] + f * (stops[i + 1][ch] - stops[i][ch])));
    };
    return {mix(0), mix(1), mix(2)};
}

}  // namespace

void write_png(const std::filesystem::path& path, const FieldGrid& grid) {
    const std::vector<double> t = normalized_unit(grid);
    const int width = grid.domain.width();
    const int height = grid.domain.height();

    // one filter byte (0 = none) ahead of each row of RGB triples
    std::vector<unsigned char> raw;
    raw.reserve(static_cast<std::size_t>(height) * (1 + 3 * static_cast<std::size_t>(width)));
    for (int row = 0; row < height; ++row) {
        raw.push_back(0);
        for (int col = 0; col < width; ++col) {
            const Rgb c = colormap(t[static_cast<std::size_t>(row) * width + col]);
            raw.push_back(c.r);
            raw.push_back(c.g);
            raw.push_back(c.b);
        }
    }

    std::vector<unsigned char> ihdr;
    push_u32be(ihdr, static_cast<std::uint32_t>(width));
    push_u32be(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // truecolor
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);

    static constexpr unsigned char signature[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    std::vector<unsigned char> bytes(signature, signature + 8);
    push_chunk(bytes, "IHDR", ihdr);
    push_chunk(bytes, "IDAT", zlib_store(raw));
    push_chunk(bytes, "IEND", {});
    write_file(path, bytes);
}

namespace {

void print_coord(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

void write_orbit_csv(std::ostream& out, std::span<const OrbitTrace> traces) {
    out << "k,re,im,xi1,xi2,xi3\n";
    for (const OrbitTrace& trace : traces) {
        for (std::size_t k = 0; k < trace.points.size(); ++k) {
            const ComplexValue& z = trace.points[k];
            const SpherePoint& xi = trace.sphere_points[k];
            out << k << ',';
            if (z.at_infinity) {
                out << "inf,inf";
            } else {
                print_coord(out, z.re);
                out << ',';
                print_coord(out, z.im);
            }
            out << ',';
            print_coord(out, xi.xi1);
            out << ',';
            print_coord(out, xi.xi2);
            out << ',';
            print_coord(out, xi.xi3);
            out << '\n';
        }
    }
}

void write_orbit_csv(const std::filesystem::path& path, std::span<const OrbitTrace> traces) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    write_orbit_csv(out, traces);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace dld
