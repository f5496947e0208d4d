// dldsphere: Lagrangian-descriptor fields, gradient ridges, and orbit traces
// for complex maps projected on the Riemann sphere.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dld/descriptor.hpp"
#include "dld/field_engine.hpp"
#include "dld/io.hpp"
#include "dld/presets.hpp"

namespace {

// argument problems exit 2; I/O and data problems exit 1
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

dld::ComplexValue parse_complex(const std::string& text) {
    const auto fail = [&]() -> dld::ComplexValue {
        throw UsageError("malformed complex literal '" + text + "' (expected a+bi)");
    };
    const char* s = text.c_str();
    char* end = nullptr;
    const double first = std::strtod(s, &end);
    if (end == s) return fail();
    if (*end == '\0') {
        if (!std::isfinite(first)) return fail();
        return dld::ComplexValue::finite(first, 0.0);
    }
    if (*end == 'i' && end[1] == '\0') {
        if (!std::isfinite(first)) return fail();
        return dld::ComplexValue::finite(0.0, first);
    }
    if (*end != '+' && *end != '-') return fail();
    const char* imag_begin = end;
    double imag = std::strtod(imag_begin, &end);
    if (end == imag_begin) {
        // bare "+i" / "-i"
        if (imag_begin[1] == 'i' && imag_begin[2] == '\0')
            return dld::ComplexValue::finite(first, imag_begin[0] == '-' ? -1.0 : 1.0);
        return fail();
    }
    if (*end != 'i' || end[1] != '\0') return fail();
    if (!std::isfinite(first) || !std::isfinite(imag)) return fail();
    return dld::ComplexValue::finite(first, imag);
}

std::pair<int, int> parse_resolution(const std::string& text) {
    int w = 0, h = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%dx%d%c", &w, &h, &extra) != 2 || w < 2 || h < 2)
        throw UsageError("malformed resolution '" + text +
                         "' (expected WxH with at least 2 pixels per axis)");
    return {w, h};
}

dld::DomainSpec parse_window(const std::string& text, int width, int height) {
    double v[4];
    const char* s = text.c_str();
    for (int i = 0; i < 4; ++i) {
        char* end = nullptr;
        v[i] = std::strtod(s, &end);
        if (end == s || (i < 3 && *end != ':') || (i == 3 && *end != '\0'))
            throw UsageError("malformed window '" + text + "' (expected xmin:xmax:ymin:ymax)");
        s = end + 1;
    }
    try {
        return {v[0], v[1], v[2], v[3], width, height};
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()));
    }
}

std::string trimmed(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

// Expand `--config <file>` into synthetic flags. Keys mirror the long flag
// names, one `key = value` per line, `#` comments allowed. A flag given on
// the command line suppresses the config entry of the same name.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) throw UsageError("--config needs a file path");
            config_path = argv[++i];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        } else {
            args.push_back(arg);
        }
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file: " + config_path);
    const auto given = [&args](const std::string& flag) {
        for (const std::string& arg : args)
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trimmed(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("malformed line " + std::to_string(line_number) + " in " +
                             config_path + " (expected key = value)");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        if (key.empty())
            throw UsageError("missing key on line " + std::to_string(line_number) + " in " +
                             config_path);
        if (!given("--" + key)) {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    return args;
}

struct MapSource {
    std::string preset_name;
    std::string map_name;
    std::string c_text;

    void add_options(CLI::App& cmd) {
        cmd.add_option("--preset", preset_name, "named map from the catalogue (see `presets`)");
        cmd.add_option("--map", map_name, "explicit map: quadratic or newton");
        cmd.add_option("--c", c_text, "quadratic parameter, a+bi");
    }

    // the preset, when one was named, still carries its bundled p and n
    std::pair<dld::MapSpec, const dld::Preset*> resolve() const {
        if (preset_name.empty() == map_name.empty())
            throw UsageError("exactly one of --preset and --map is required");
        if (!preset_name.empty()) {
            if (!c_text.empty())
                throw UsageError("--c cannot be combined with --preset");
            const dld::Preset* preset = dld::find_preset(preset_name);
            if (preset == nullptr) throw UsageError("unknown preset '" + preset_name + "'");
            return {preset->map(), preset};
        }
        if (map_name == "quadratic") {
            if (c_text.empty()) throw UsageError("--map quadratic requires --c");
            return {dld::MapSpec::quadratic(parse_complex(c_text)), nullptr};
        }
        if (map_name == "newton") {
            if (!c_text.empty()) throw UsageError("--map newton takes no --c");
            return {dld::MapSpec::newton_cubic(), nullptr};
        }
        throw UsageError("unknown map '" + map_name + "' (use quadratic or newton)");
    }
};

// unset flags carry NaN / -1 sentinels and fall back to the preset bundle
dld::DescriptorParams resolve_params(const dld::Preset* preset, double p_flag, int iters_flag) {
    double p = p_flag;
    int n = iters_flag;
    if (std::isnan(p)) {
        if (preset == nullptr) throw UsageError("--p is required with --map");
        p = preset->p;
    }
    if (n < 0) {
        if (preset == nullptr) throw UsageError("--iters is required with --map");
        n = preset->n;
    }
    try {
        return {p, n};
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()));
    }
}

struct FieldArgs {
    MapSource source;
    std::string kernel = "sphere";
    std::string res = "800x800";
    std::string window = "-2:2:-2:2";
    double p = std::numeric_limits<double>::quiet_NaN();
    int iters = -1;
    unsigned threads = 0;
    std::string out_ldf, out_png, out_pgm;
};

void run_field(const FieldArgs& args) {
    if (args.out_ldf.empty() && args.out_png.empty() && args.out_pgm.empty())
        throw UsageError("no output requested; give --out, --png, or --pgm");
    dld::Kernel kernel;
    if (args.kernel == "sphere")
        kernel = dld::Kernel::Sphere;
    else if (args.kernel == "planar")
        kernel = dld::Kernel::PlanarForward;
    else
        throw UsageError("unknown kernel '" + args.kernel + "' (use sphere or planar)");

    const auto [spec, preset] = args.source.resolve();
    const dld::DescriptorParams params = resolve_params(preset, args.p, args.iters);
    const auto [width, height] = parse_resolution(args.res);
    const dld::DomainSpec domain = parse_window(args.window, width, height);

    const auto start = std::chrono::steady_clock::now();
    const dld::FieldGrid grid = dld::evaluate_field(spec, domain, params, kernel, args.threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!args.out_ldf.empty()) dld::write_ldf(args.out_ldf, grid);
    if (!args.out_pgm.empty()) dld::write_pgm16(args.out_pgm, grid);
    if (!args.out_png.empty()) dld::write_png(args.out_png, grid);

    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();
    std::size_t nan_count = 0;
    for (double v : grid.values) {
        if (!std::isfinite(v)) {
            ++nan_count;
            continue;
        }
        if (std::isnan(lo) || v < lo) lo = v;
        if (std::isnan(hi) || v > hi) hi = v;
    }
    std::printf("min=%.6g max=%.6g nan=%zu wall=%.3fs\n", lo, hi, nan_count, wall);
}

struct RidgesArgs {
    std::string in;
    double percentile = 90.0;
    std::string out_image, out_png, mask_ldf, grad_ldf;
};

void run_ridges(const RidgesArgs& args) {
    if (args.out_image.empty() && args.out_png.empty() && args.mask_ldf.empty() &&
        args.grad_ldf.empty())
        throw UsageError("no output requested; give --out, --png, --mask-out, or --grad-out");
    if (!(args.percentile > 0.0 && args.percentile < 100.0))
        throw UsageError("--percentile must lie strictly between 0 and 100");

    const dld::FieldGrid field = dld::read_ldf(args.in);
    if (field.value_kind != dld::ValueKind::Descriptor)
        throw std::runtime_error("input raster is not a descriptor field: " + args.in);

    const dld::FieldGrid grad = dld::gradient_magnitude(field);
    const dld::FieldGrid mask = dld::extract_ridges(grad, args.percentile);

    if (!args.grad_ldf.empty()) dld::write_ldf(args.grad_ldf, grad);
    if (!args.mask_ldf.empty()) dld::write_ldf(args.mask_ldf, mask);
    if (!args.out_image.empty()) dld::write_pgm16(args.out_image, mask);
    if (!args.out_png.empty()) dld::write_png(args.out_png, mask);
}

struct OrbitArgs {
    MapSource source;
    std::vector<std::string> z0_texts;
    int iters = 0;
    std::string out;
};

void run_orbit(const OrbitArgs& args) {
    const auto [spec, preset] = args.source.resolve();
    (void)preset;
    if (args.iters < 1) throw UsageError("--iters must be at least 1");
    if (args.z0_texts.empty()) throw UsageError("at least one --z0 is required");

    std::vector<dld::OrbitTrace> traces;
    traces.reserve(args.z0_texts.size());
    for (const std::string& text : args.z0_texts)
        traces.push_back(dld::iterate_orbit(spec, parse_complex(text), args.iters));

    if (args.out.empty())
        dld::write_orbit_csv(std::cout, traces);
    else
        dld::write_orbit_csv(std::filesystem::path(args.out), traces);
}

void run_presets() {
    std::printf("%-17s %-10s %-14s %-10s %-5s %s\n", "name", "map", "c", "p", "N", "note");
    for (const dld::Preset& p : dld::preset_catalogue()) {
        char c_text[32];
        if (p.kind == dld::MapKind::NewtonCubic)
            std::snprintf(c_text, sizeof c_text, "-");
        else
            std::snprintf(c_text, sizeof c_text, "%g%+gi", p.c_re, p.c_im);
        std::printf("%-17s %-10s %-14s %-10g %-5d %s\n", p.name,
                    p.kind == dld::MapKind::NewtonCubic ? "newton" : "quadratic", c_text, p.p,
                    p.n, p.blurb);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrangian-descriptor fields for complex maps on the Riemann sphere"};
    app.require_subcommand(1);
    std::string config_sink;  // real handling happens in expand_config

    FieldArgs field_args;
    CLI::App* field = app.add_subcommand("field", "compute a descriptor field over a pixel grid");
    field_args.source.add_options(*field);
    field->add_option("--kernel", field_args.kernel, "sphere (default) or planar");
    field->add_option("--res", field_args.res, "grid resolution WxH (default 800x800)");
    field->add_option("--window", field_args.window,
                      "plane window xmin:xmax:ymin:ymax (default -2:2:-2:2)");
    field->add_option("--p", field_args.p, "norm exponent in (0,1]");
    field->add_option("--iters", field_args.iters, "iteration count N");
    field->add_option("--threads", field_args.threads, "cap worker threads (0 = auto)");
    field->add_option("--out", field_args.out_ldf, "output LDF raster path");
    field->add_option("--png", field_args.out_png, "output PNG image path");
    field->add_option("--pgm", field_args.out_pgm, "output 16-bit PGM image path");
    field->add_option("--config", config_sink, "key = value file mirroring the flags");
    field->callback([&] { run_field(field_args); });

    RidgesArgs ridges_args;
    CLI::App* ridges =
        app.add_subcommand("ridges", "gradient-magnitude ridge mask of a descriptor raster");
    ridges->add_option("--in", ridges_args.in, "input LDF descriptor raster")->required();
    ridges->add_option("--percentile", ridges_args.percentile,
                       "mask threshold percentile in (0,100), default 90");
    ridges->add_option("--out", ridges_args.out_image, "output mask image path (16-bit PGM)");
    ridges->add_option("--png", ridges_args.out_png, "output mask PNG path");
    ridges->add_option("--mask-out", ridges_args.mask_ldf, "output mask LDF raster path");
    ridges->add_option("--grad-out", ridges_args.grad_ldf,
                       "output gradient-magnitude LDF raster path");
    ridges->add_option("--config", config_sink, "key = value file mirroring the flags");
    ridges->callback([&] { run_ridges(ridges_args); });

    OrbitArgs orbit_args;
    CLI::App* orbit = app.add_subcommand("orbit", "iterate initial conditions and write a CSV trace");
    orbit_args.source.add_options(*orbit);
    orbit->add_option("--z0", orbit_args.z0_texts, "initial condition a+bi (repeatable)")
        ->required();
    orbit->add_option("--iters", orbit_args.iters, "iteration count N")->required();
    orbit->add_option("--out", orbit_args.out, "output CSV path (default: stdout)");
    orbit->add_option("--config", config_sink, "key = value file mirroring the flags");
    orbit->callback([&] { run_orbit(orbit_args); });

    CLI::App* presets = app.add_subcommand("presets", "list the map catalogue");
    presets->callback([&] { run_presets(); });

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
