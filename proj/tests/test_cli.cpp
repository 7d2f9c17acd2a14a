#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnsir/sir_se.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    if (const char* env = std::getenv("LNSIR_CLI")) return env;
    return "../tools/lnsir_cli";
}

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kCellCenterConfig = R"({
  "scene": {"type": "hex-uma", "ue": {"r_m": 25.0}, "p_default": 0.5},
  "matching": {"quad_order": 8},
  "sim": {"n_samples": 200000, "seed": 42, "mode": "reduced", "threads": 4},
  "alpha": 0.1,
  "se_unit": "bits",
  "ksd_gate": 0.03
})";

// first column strictly increasing, header skipped
void check_sorted_csv(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line[0] == '#') std::getline(in, line);  // comment
    double prev = -1e300;
    int rows = 0;
    while (std::getline(in, line)) {
        const double x = std::stod(line.substr(0, line.find(',')));
        CHECK(x > prev);
        prev = x;
        ++rows;
    }
    CHECK(rows > 1);
}

}  // namespace

TEST_CASE("analyze writes a consistent summary and curves") {
    TempDir dir("cli_analyze");
    write_file(dir.path / "config.json", kCellCenterConfig);
    REQUIRE(run("analyze --config " + (dir.path / "config.json").string() +
                " --out " + (dir.path / "out").string()) == 0);

    const auto j = json::parse(slurp(dir.path / "out" / "analysis.json"));
    const double mu = j["sir"]["mu_db"].get<double>();
    const double sigma = j["sir"]["sigma_db"].get<double>();
    CHECK(sigma > 0.0);
    CHECK(j["equivalent"]["method"] == "tensor-quadrature");
    CHECK(std::abs(j["equivalent"]["residual_s1"].get<double>()) < 1e-10);

    // recomputing the KPIs from the stored distribution reproduces the
    // stored values
    const auto kpis = lnsir::sir_se::se_kpis(
        lnsir::sir_se::SirDistribution{mu, sigma}, j["se"]["alpha"].get<double>(),
        lnsir::sir_se::SeUnit::Bits);
    CHECK(std::abs(kpis.mean_se - j["se"]["mean"].get<double>()) < 1e-9);
    CHECK(std::abs(kpis.outage_se - j["se"]["outage"].get<double>()) < 1e-9);

    check_sorted_csv(dir.path / "out" / "sir_cdf.csv");
    check_sorted_csv(dir.path / "out" / "se_cdf.csv");
}

TEST_CASE("validate passes the gate on the default scene") {
    TempDir dir("cli_validate");
    write_file(dir.path / "config.json", kCellCenterConfig);
    REQUIRE(run("validate --config " + (dir.path / "config.json").string() +
                " --out " + (dir.path / "out").string()) == 0);

    const auto j = json::parse(slurp(dir.path / "out" / "validation.json"));
    CHECK(j["gate"]["pass"].get<bool>());
    CHECK(j["fit"]["ksd"].get<double>() <= 0.03);
    CHECK(j["fit"]["kld"].get<double>() >= 0.0);
    CHECK(j["sim"]["n_samples"].get<long long>() == 200000);
    CHECK(j["sim"]["mode"] == "reduced");
    check_sorted_csv(dir.path / "out" / "overlay.csv");
}

TEST_CASE("validate with a corrupted analytic mean fails the gate") {
    TempDir dir("cli_gate");
    write_file(dir.path / "config.json", kCellCenterConfig);
    CHECK(run("validate --config " + (dir.path / "config.json").string() +
              " --out " + (dir.path / "out").string() +
              " --samples 50000 --debug-mu-offset-db 10") == 3);
    const auto j = json::parse(slurp(dir.path / "out" / "validation.json"));
    CHECK_FALSE(j["gate"]["pass"].get<bool>());
}

TEST_CASE("validate is byte-identical across reruns with the same seed") {
    TempDir dir("cli_repeat");
    write_file(dir.path / "config.json", kCellCenterConfig);
    const std::string base = "validate --config " +
                             (dir.path / "config.json").string() +
                             " --samples 50000 --seed 7 --out ";
    REQUIRE(run(base + (dir.path / "a").string()) == 0);
    REQUIRE(run(base + (dir.path / "b").string()) == 0);
    CHECK(slurp(dir.path / "a" / "validation.json") ==
          slurp(dir.path / "b" / "validation.json"));
    CHECK(slurp(dir.path / "a" / "overlay.csv") ==
          slurp(dir.path / "b" / "overlay.csv"));
}

TEST_CASE("sweep reports the expected monotone trends") {
    TempDir dir("cli_sweep");
    write_file(dir.path / "config.json", kCellCenterConfig);

    SUBCASE("mean and outage SE fall with UE distance") {
        REQUIRE(run("sweep --config " + (dir.path / "config.json").string() +
                    " --out " + (dir.path / "out").string() +
                    " --axis ue_distance --values 25,75,125,175,225") == 0);
        const auto j = json::parse(slurp(dir.path / "out" / "sweep_trends.json"));
        CHECK(j["mean_se_strictly_decreasing"].get<bool>());
        CHECK(j["outage_se_strictly_decreasing"].get<bool>());
        check_sorted_csv(dir.path / "out" / "sweep.csv");
    }

    SUBCASE("mean SIR falls with interferer activity") {
        REQUIRE(run("sweep --config " + (dir.path / "config.json").string() +
                    " --out " + (dir.path / "out").string() +
                    " --axis activity --values 0.2,0.5,1.0") == 0);
        const auto j = json::parse(slurp(dir.path / "out" / "sweep_trends.json"));
        CHECK(j["mean_sir_strictly_decreasing"].get<bool>());
    }

    SUBCASE("single-value sweep agrees with analyze") {
        REQUIRE(run("analyze --config " + (dir.path / "config.json").string() +
                    " --out " + (dir.path / "ref").string()) == 0);
        REQUIRE(run("sweep --config " + (dir.path / "config.json").string() +
                    " --out " + (dir.path / "out").string() +
                    " --axis ue_distance --values 25") == 0);
        const auto ref = json::parse(slurp(dir.path / "ref" / "analysis.json"));
        std::ifstream in(dir.path / "out" / "sweep.csv");
        std::string line;
        std::getline(in, line);  // header
        std::getline(in, line);
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
        REQUIRE(cols.size() == 5);
        CHECK(cols[1] == doctest::Approx(ref["sir"]["mu_db"].get<double>())
                             .epsilon(1e-9));
        CHECK(cols[3] == doctest::Approx(ref["se"]["mean"].get<double>())
                             .epsilon(1e-9));
        CHECK(cols[4] == doctest::Approx(ref["se"]["outage"].get<double>())
                             .epsilon(1e-9));
    }
}

TEST_CASE("config errors exit with code 1") {
    TempDir dir("cli_errors");
    CHECK(run("analyze --config " + (dir.path / "missing.json").string() +
              " --out " + dir.path.string()) == 1);

    write_file(dir.path / "broken.json", "{\"scene\": ");
    CHECK(run("analyze --config " + (dir.path / "broken.json").string() +
              " --out " + dir.path.string()) == 1);

    write_file(dir.path / "badtype.json",
               R"({"scene": {"type": "torus"}})");
    CHECK(run("analyze --config " + (dir.path / "badtype.json").string() +
              " --out " + dir.path.string()) == 1);

    write_file(dir.path / "nofile.json",
               R"({"scene": {"type": "file", "path": "does_not_exist.json"}})");
    CHECK(run("analyze --config " + (dir.path / "nofile.json").string() +
              " --out " + dir.path.string()) == 1);

    // bad axis on sweep
    write_file(dir.path / "config.json", kCellCenterConfig);
    CHECK(run("sweep --config " + (dir.path / "config.json").string() +
              " --out " + dir.path.string() + " --axis frequency --values 1") ==
          1);
}
