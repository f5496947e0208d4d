#include <doctest.h>

#include <sys/wait.h>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dld/field_engine.hpp"
#include "dld/io.hpp"
#include "dld/presets.hpp"

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path tmp_dir() {
    const fs::path dir = fs::current_path() / "cli_test_tmp";
    fs::create_directories(dir);
    return dir;
}

std::string slurp_text(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = tmp_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_path = tmp_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(DLDSPHERE_BIN) + " " + args + " >" + out_path.string() +
                            " 2>" + err_path.string();
    const int rc = std::system(cmd.c_str());
    CmdResult result;
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.out = slurp_text(out_path);
    result.err = slurp_text(err_path);
    return result;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("presets lists the whole catalogue") {
    const CmdResult r = run_cli("presets");
    CHECK(r.status == 0);
    for (const dld::Preset& p : dld::preset_catalogue())
        CHECK(r.out.find(p.name) != std::string::npos);
}

TEST_CASE("field run matches the library bit for bit") {
    const fs::path ldf = tmp_dir() / "dendrite.ldf";
    const fs::path pgm = tmp_dir() / "dendrite.pgm";
    const fs::path png = tmp_dir() / "dendrite.png";
    const CmdResult r = run_cli("field --preset dendrite --res 24x24 --window -1.8:1.8:-1.8:1.8 --out " +
                                ldf.string() + " --pgm " + pgm.string() + " --png " + png.string());
    REQUIRE(r.status == 0);
    CHECK(r.out.find("min=") != std::string::npos);
    CHECK(r.out.find("nan=0") != std::string::npos);
    REQUIRE(fs::exists(ldf));
    REQUIRE(fs::exists(pgm));
    REQUIRE(fs::exists(png));

    const dld::Preset* preset = dld::find_preset("dendrite");
    REQUIRE(preset != nullptr);
    const dld::FieldGrid expected = dld::evaluate_field(
        preset->map(), dld::DomainSpec(-1.8, 1.8, -1.8, 1.8, 24, 24),
        dld::DescriptorParams(preset->p, preset->n), dld::Kernel::Sphere);
    const dld::FieldGrid got = dld::read_ldf(ldf);
    REQUIRE(got.values.size() == expected.values.size());
    for (std::size_t i = 0; i < got.values.size(); ++i)
        REQUIRE(std::bit_cast<std::uint64_t>(got.values[i]) ==
                std::bit_cast<std::uint64_t>(expected.values[i]));
}

TEST_CASE("planar kernel reports the escaped pixels in the summary") {
    const fs::path ldf = tmp_dir() / "escape.ldf";
    const CmdResult r =
        run_cli("field --map quadratic --c 0+0i --kernel planar --iters 1000 --p 1 "
                "--res 100x100 --window 2:3:2:3 --out " +
                ldf.string());
    REQUIRE(r.status == 0);
    CHECK(r.out.find("nan=10000") != std::string::npos);
}

TEST_CASE("argument errors exit with status 2") {
    CHECK(run_cli("field --map quadratic --c 0+0i --p 2 --iters 10 --out x.ldf").status == 2);
    const CmdResult p_range = run_cli("field --map quadratic --c 0+0i --p 2 --iters 10 --out x.ldf");
    CHECK(p_range.err.find("(0, 1]") != std::string::npos);

    CHECK(run_cli("field --preset dendrite --map newton --out x.ldf").status == 2);
    CHECK(run_cli("field --out x.ldf").status == 2);
    CHECK(run_cli("field --preset no-such-set --out x.ldf").status == 2);
    CHECK(run_cli("field --preset dendrite").status == 2);  // no output requested
    CHECK(run_cli("field --map quadratic --c bogus --p 1 --iters 5 --out x.ldf").status == 2);
    CHECK(run_cli("field --map quadratic --c 1+2j --p 1 --iters 5 --out x.ldf").status == 2);
    CHECK(run_cli("orbit --map quadratic --c 0+0i --z0 nope --iters 3").status == 2);
    CHECK(run_cli("nonsense").status == 2);
}

TEST_CASE("ridges pipeline produces a mask") {
    const fs::path ldf = tmp_dir() / "circle.ldf";
    REQUIRE(run_cli("field --preset unit-circle --iters 200 --res 32x32 "
                    "--window -1.5:1.5:-1.5:1.5 --out " +
                    ldf.string())
                .status == 0);

    const fs::path mask_pgm = tmp_dir() / "mask.pgm";
    const fs::path mask_ldf = tmp_dir() / "mask.ldf";
    const fs::path grad_ldf = tmp_dir() / "grad.ldf";
    const CmdResult r = run_cli("ridges --in " + ldf.string() + " --percentile 99 --out " +
                                mask_pgm.string() + " --mask-out " + mask_ldf.string() +
                                " --grad-out " + grad_ldf.string());
    REQUIRE(r.status == 0);

    const std::string pgm = slurp_text(mask_pgm);
    CHECK(pgm.rfind("P5\n32 32\n65535\n", 0) == 0);

    const dld::FieldGrid mask = dld::read_ldf(mask_ldf);
    CHECK(mask.value_kind == dld::ValueKind::RidgeMask);
    int marked = 0;
    for (double v : mask.values) {
        REQUIRE((v == 0.0 || v == 1.0));
        marked += v == 1.0;
    }
    CHECK(marked > 0);
    CHECK(dld::read_ldf(grad_ldf).value_kind == dld::ValueKind::GradientMagnitude);
}

TEST_CASE("ridges rejects bad inputs with the documented codes") {
    const fs::path fake = tmp_dir() / "fake.ldf";
    std::ofstream(fake) << "definitely not a raster";
    const CmdResult corrupt = run_cli("ridges --in " + fake.string() + " --out m.pgm");
    CHECK(corrupt.status == 1);
    CHECK(corrupt.err.find("not an LDF file") != std::string::npos);

    CHECK(run_cli("ridges --in missing.ldf --out m.pgm").status == 1);

    const fs::path ldf = tmp_dir() / "circle.ldf";  // built by the previous case
    CHECK(run_cli("ridges --in " + ldf.string() + " --percentile 0 --out m.pgm").status == 2);
    CHECK(run_cli("ridges --in " + ldf.string() + " --percentile 100 --out m.pgm").status == 2);

    // a mask raster is not a descriptor field
    const fs::path mask_ldf = tmp_dir() / "mask.ldf";
    if (fs::exists(mask_ldf))
        CHECK(run_cli("ridges --in " + mask_ldf.string() + " --out m.pgm").status == 1);
}

TEST_CASE("orbit of the basilica parameter alternates exactly") {
    const CmdResult r = run_cli("orbit --map quadratic --c -1+0i --z0 0+0i --iters 6");
    REQUIRE(r.status == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 8);  // header + 7 points
    CHECK(rows[0][0] == "k");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 6);
        CHECK(rows[i][1] == (i % 2 == 1 ? "0" : "-1"));
        CHECK(rows[i][2] == "0");
    }
}

TEST_CASE("newton orbit settles on the real root within eight rows") {
    const fs::path csv = tmp_dir() / "newton.csv";
    REQUIRE(run_cli("orbit --map newton --z0 2+0i --iters 20 --out " + csv.string()).status == 0);
    const auto rows = parse_csv(slurp_text(csv));
    REQUIRE(rows.size() == 22);
    const double re = std::stod(rows[9][1]);  // header + k=0..8
    const double im = std::stod(rows[9][2]);
    CHECK(std::fabs(re - 1.0) <= 1e-12);
    CHECK(std::fabs(im) <= 1e-12);
}

TEST_CASE("cauliflower orbit drifts into the parabolic point") {
    const fs::path csv = tmp_dir() / "cauli.csv";
    REQUIRE(run_cli("orbit --preset cauliflower --z0 0.3+0.2i --iters 1000 --out " + csv.string())
                .status == 0);
    const auto rows = parse_csv(slurp_text(csv));
    REQUIRE(rows.size() == 1002);
    const double re = std::stod(rows.back()[1]);
    const double im = std::stod(rows.back()[2]);
    CHECK(std::fabs(re - 0.5) < 0.01);
    CHECK(std::fabs(im) < 0.01);
}

TEST_CASE("config file supplies values and flags override them") {
    const fs::path cfg = tmp_dir() / "run.cfg";
    std::ofstream(cfg) << "p=0.25\niters=30\n";

    const fs::path from_cfg = tmp_dir() / "from_cfg.ldf";
    REQUIRE(run_cli("field --map quadratic --c 0+0i --config " + cfg.string() +
                    " --res 8x8 --out " + from_cfg.string())
                .status == 0);

    const fs::path overridden = tmp_dir() / "overridden.ldf";
    REQUIRE(run_cli("field --map quadratic --c 0+0i --config " + cfg.string() +
                    " --iters 10 --res 8x8 --out " + overridden.string())
                .status == 0);

    const dld::MapSpec squaring = dld::MapSpec::quadratic(dld::ComplexValue::finite(0, 0));
    const dld::DomainSpec domain(-2, 2, -2, 2, 8, 8);
    const dld::FieldGrid want_cfg =
        dld::evaluate_field(squaring, domain, dld::DescriptorParams(0.25, 30), dld::Kernel::Sphere);
    const dld::FieldGrid want_override =
        dld::evaluate_field(squaring, domain, dld::DescriptorParams(0.25, 10), dld::Kernel::Sphere);
    CHECK(dld::read_ldf(from_cfg).values == want_cfg.values);
    CHECK(dld::read_ldf(overridden).values == want_override.values);
}

TEST_CASE("image outputs are identical across worker counts") {
    const fs::path a = tmp_dir() / "t1.png";
    const fs::path b = tmp_dir() / "t4.png";
    REQUIRE(run_cli("field --preset rabbit --res 24x24 --threads 1 --png " + a.string()).status == 0);
    REQUIRE(run_cli("field --preset rabbit --res 24x24 --threads 4 --png " + b.string()).status == 0);
    CHECK(slurp_text(a) == slurp_text(b));
}

}  // TEST_SUITE
