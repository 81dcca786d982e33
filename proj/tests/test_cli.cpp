#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = MORREYLAB_CLI_PATH;

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + kCli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("morreylab_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("eval: riesz potential of the unit indicator") {
    const fs::path dir = fresh_dir("eval");
    const fs::path cfg = dir / "cfg.json";
    write_file(cfg, R"({
      "grid": {"box": {"lo": [-4.0], "hi": [4.0]}, "resolution": 4096},
      "function": {"type": "indicator-ball", "center": [0.0], "radius": 1.0},
      "operator": {"kind": "riesz", "alpha": 0.5}
    })");
    CHECK(run("eval --config " + cfg.string() + " --out " + dir.string()) == 0);

    // row nearest x = 0 must match the closed form 4/sqrt(2 pi)
    std::ifstream in(dir / "values.csv");
    std::string line;
    std::getline(in, line); // header
    double best_x = 1e9, best_v = 0.0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        if (std::abs(x) < std::abs(best_x)) {
            best_x = x;
            best_v = v;
        }
    }
    CHECK(best_v == doctest::Approx(1.59576912).epsilon(1e-3));
    CHECK(fs::exists(dir / "meta.json"));
}

TEST_CASE("exit codes: config, domain, unknown study") {
    const fs::path dir = fresh_dir("codes");
    const fs::path bad = dir / "bad.json";
    write_file(bad, "{ not json");
    CHECK(run("eval --config " + bad.string() + " --out " + dir.string()) == 2);

    const fs::path dom = dir / "dom.json";
    write_file(dom, R"({
      "grid": {"box": {"lo": [-1.0], "hi": [1.0]}, "resolution": 64},
      "function": {"type": "indicator-ball", "center": [0.0], "radius": 0.5},
      "operator": {"kind": "riesz", "alpha": 1.0}
    })");
    CHECK(run("eval --config " + dom.string() + " --out " + dir.string()) == 3);

    CHECK(run("verify no-such-study --out " + dir.string()) == 2);
    CHECK(run("eval --out " + dir.string()) == 2); // --config is required
}

TEST_CASE("norm, apq, and dini subcommands") {
    const fs::path dir = fresh_dir("wrap");

    write_file(dir / "norm.json.in", R"({
      "grid": {"box": {"lo": [-2.0], "hi": [2.0]}, "resolution": 256},
      "function": {"type": "tent", "center": [0.0], "radius": 0.0001},
      "norm": {"space": "bmo", "family": {"r_min": 0.125, "r_max": 2.0, "center_stride": 16}}
    })");
    CHECK(run("norm --config " + (dir / "norm.json.in").string() + " --out " + dir.string()) == 0);
    auto norm = nlohmann::json::parse(slurp(dir / "norm.json"));
    CHECK(norm["value"].get<double>() == doctest::Approx(0.0)); // constant-zero function

    write_file(dir / "apq.json.in", R"({
      "grid": {"box": {"lo": [-2.0], "hi": [2.0]}, "resolution": 256},
      "weight": {"form": "constant", "c": 1.0},
      "p": 1.0, "q": 2.0,
      "family": {"r_min": 0.015625, "r_max": 2.0, "center_stride": 32}
    })");
    CHECK(run("apq --config " + (dir / "apq.json.in").string() + " --out " + dir.string()) == 0);
    auto apq = nlohmann::json::parse(slurp(dir / "apq.json"));
    CHECK(apq["constant"].get<double>() == doctest::Approx(1.0));
    CHECK_FALSE(apq["divergence_flag"].get<bool>());

    write_file(dir / "dini.json.in", R"({
      "kernel": {"n": 2, "form": "constant", "value": 1.0},
      "s": "inf", "delta_min": 0.001
    })");
    CHECK(run("dini --config " + (dir / "dini.json.in").string() + " --out " + dir.string()) == 0);
    auto dini = nlohmann::json::parse(slurp(dir / "dini.json"));
    CHECK(dini["value"].get<double>() == doctest::Approx(0.0));
}

TEST_CASE("verify: tolerance failure exits 4 but still writes the report") {
    const fs::path dir = fresh_dir("tolfail");
    const fs::path cfg = dir / "strict.json";
    write_file(cfg, R"({"spread_tol": 1.0000000001, "slope_tol": 1e-12})");
    const int rc = run("verify theorem2-dilation --config " + cfg.string() + " --out " +
                       dir.string() + " --resolution 512");
    CHECK(rc == 4);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "report.csv"));
}

TEST_CASE("verify: reports are byte-identical across runs and thread counts") {
    const fs::path d1 = fresh_dir("det1");
    const fs::path d2 = fresh_dir("det2");
    const fs::path d4 = fresh_dir("det4");
    const std::string args = "verify theorem2-dilation --resolution 512 --out ";
    CHECK(run(args + d1.string(), "MORREYLAB_THREADS=1") == 0);
    CHECK(run(args + d2.string(), "MORREYLAB_THREADS=1") == 0);
    CHECK(run(args + d4.string(), "MORREYLAB_THREADS=4") == 0);
    const std::string csv1 = slurp(d1 / "report.csv");
    CHECK(csv1 == slurp(d2 / "report.csv"));
    CHECK(csv1 == slurp(d4 / "report.csv"));
    CHECK(slurp(d1 / "report.json") == slurp(d4 / "report.json"));
    CHECK(!csv1.empty());
}

TEST_CASE("verify: csv-only format") {
    const fs::path dir = fresh_dir("fmt");
    CHECK(run("verify semigroup --format csv --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "report.csv"));
    CHECK_FALSE(fs::exists(dir / "report.json"));
}
