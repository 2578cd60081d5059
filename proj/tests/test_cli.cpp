#include <cstdlib>
#include <filesystem>

#include <unistd.h>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("BIFCUR_CLI");
    REQUIRE_MESSAGE(p != nullptr, "BIFCUR_CLI must point at the bifcur binary");
    return p;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("bifcur_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& threads = "") {
    std::string cmd;
    if (!threads.empty()) cmd += "BIFCUR_THREADS=" + threads + " ";
    cmd += cli_path() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("usage and config errors exit with code 2") {
    CHECK(run("") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("lyap --grid bogus") == 2);
    CHECK(run("lyap --grid 0,0,1,1,4,4") == 2);        // grid too small
    CHECK(run("lyap --preset unknown_preset") == 2);
    TempDir tmp;
    { std::ofstream(tmp.file("bad.json")) << "{ not json"; }
    CHECK(run("lyap --config " + tmp.file("bad.json")) == 2);
    { std::ofstream(tmp.file("absent_family.json")) << R"({"family":{"file":"/nonexistent.json"}})"; }
    CHECK(run("lyap --config " + tmp.file("absent_family.json")) == 2);
}

TEST_CASE("lyap writes the field and a reusable resolved config") {
    TempDir tmp;
    std::string out1 = tmp.file("run1");
    int rc = run("lyap --preset riley --grid -3,0,2,2,16,16 --n 20 --m 8 --seed 5 --out " +
                 out1);
    REQUIRE(rc == 0);
    for (const char* f : {"chi.csv", "chi.pgm", "chi.json", "resolved_config.json"})
        CHECK(fs::exists(fs::path(out1) / f));

    json resolved = json::parse(std::ifstream(fs::path(out1) / "resolved_config.json"));
    CHECK(resolved.at("seed").get<std::uint64_t>() == 5);
    CHECK(resolved.at("n").get<int>() == 20);
    CHECK(resolved.at("grid").at("nx").get<int>() == 16);

    // rerun purely from the resolved config: identical bytes
    std::string out2 = tmp.file("run2");
    resolved["out"] = out2;
    { std::ofstream(tmp.file("cfg.json")) << resolved.dump(); }
    REQUIRE(run("lyap --config " + tmp.file("cfg.json")) == 0);
    CHECK(slurp(out1 + "/chi.csv") == slurp(out2 + "/chi.csv"));
    CHECK(slurp(out1 + "/chi.pgm") == slurp(out2 + "/chi.pgm"));
}

TEST_CASE("flags override config file values") {
    TempDir tmp;
    {
        std::ofstream(tmp.file("cfg.json")) << R"({
          "family": {"preset": "riley"},
          "grid": {"center": [-3, 0], "width": 2, "height": 2, "nx": 16, "ny": 16},
          "n": 10, "m": 4, "seed": 1})";
    }
    std::string out = tmp.file("out");
    REQUIRE(run("lyap --config " + tmp.file("cfg.json") + " --n 15 --out " + out) == 0);
    json resolved = json::parse(std::ifstream(fs::path(out) / "resolved_config.json"));
    CHECK(resolved.at("n").get<int>() == 15);
    CHECK(resolved.at("m").get<int>() == 4);
}

TEST_CASE("outputs are independent of the thread count") {
    TempDir tmp;
    std::string base =
        "lyap --preset riley --grid -3,0,2,2,16,16 --n 20 --m 8 --seed 42 --out ";
    REQUIRE(run(base + tmp.file("t1"), "1") == 0);
    REQUIRE(run(base + tmp.file("t4"), "4") == 0);
    REQUIRE(run(base + tmp.file("tmax"), "16") == 0);
    std::string ref = slurp(tmp.file("t1") + "/chi.csv");
    CHECK(slurp(tmp.file("t4") + "/chi.csv") == ref);
    CHECK(slurp(tmp.file("tmax") + "/chi.csv") == ref);
}

TEST_CASE("bif writes mass, summary and heatmap") {
    TempDir tmp;
    std::string out = tmp.file("bif");
    REQUIRE(run("bif --preset riley --grid -3,0,4,4,24,24 --n 15 --m 20 --seed 2 --out " +
                out) == 0);
    for (const char* f : {"bif.csv", "bif_summary.json", "bif.pgm"})
        CHECK(fs::exists(fs::path(out) / f));
    json summary = json::parse(std::ifstream(fs::path(out) / "bif_summary.json"));
    CHECK(summary.at("total").get<double>() > 0.0);
    CHECK(summary.contains("min"));
    CHECK(summary.contains("max"));
    CHECK(summary.at("negative_fraction").get<double>() < 0.3);
}

TEST_CASE("zeros with an explicit word") {
    TempDir tmp;
    std::string out = tmp.file("z");
    REQUIRE(run("zeros --preset riley --word ab --t 4,0 --grid -2,0,5,5,32,32 "
                "--n 2 --seed 3 --out " + out) == 0);
    json clouds = json::parse(std::ifstream(fs::path(out) / "zeros.json"));
    REQUIRE(clouds.is_array());
    REQUIRE(clouds.size() == 1);
    CHECK(clouds[0].at("word") == "ab");
    // tr^2(ab) = (2 + lambda)^2 = 4 at lambda = 0, -4
    const json& zs = clouds[0].at("zeros");
    REQUIRE(zs.size() == 2);
    for (const auto& z : zs) {
        CHECK(z.contains("re"));
        CHECK(z.contains("im"));
        CHECK(z.contains("mult"));
        CHECK(z.contains("residual"));
    }
    CHECK(fs::exists(fs::path(out) / "comparison.json"));
    CHECK(fs::exists(fs::path(out) / "empirical.csv"));
}

TEST_CASE("collide requires a second word alongside --word") {
    TempDir tmp;
    CHECK(run("collide --preset riley --word a --grid -0.1,0,2,2,16,16 --out " +
              tmp.file("c1")) == 2);
    std::string out = tmp.file("c2");
    REQUIRE(run("collide --preset riley --word a --word2 b --grid 0,0.05,2,2,24,24 "
                "--n 2 --seed 3 --out " + out) == 0);
    json clouds = json::parse(std::ifstream(fs::path(out) / "collisions.json"));
    REQUIRE(clouds.size() == 1);
    // tr [a,b] - 2 = lambda^2: one double zero at the origin
    const json& zs = clouds[0].at("zeros");
    REQUIRE(zs.size() == 1);
    CHECK(zs[0].at("mult").get<int>() == 2);
    CHECK(std::abs(zs[0].at("re").get<double>()) < 1e-6);
}

TEST_CASE("stats writes the decay tables") {
    TempDir tmp;
    std::string out = tmp.file("s");
    {
        std::ofstream(tmp.file("cfg.json")) << R"({
          "family": {"preset": "schottky", "s": 3.0},
          "n_list": [10, 20], "m": 60, "eps": 0.3, "gamma": 0.2, "seed": 7})";
    }
    REQUIRE(run("stats --config " + tmp.file("cfg.json") + " --out " + out) == 0);
    json stats = json::parse(std::ifstream(fs::path(out) / "stats.json"));
    REQUIRE(stats.at("delta").size() == 2);
    REQUIRE(stats.at("trace_ld").size() == 2);
    CHECK(stats.at("delta")[0].contains("wilson_low"));
    CHECK(stats.at("pair_separation_violation").get<double>() <= 1.0);
}

TEST_CASE("typechange writes a mask over the full grid") {
    TempDir tmp;
    std::string out = tmp.file("t");
    REQUIRE(run("typechange --preset riley --grid -2,0,4,4,16,16 --n 4 --m 4 "
                "--seed 9 --out " + out) == 0);
    std::string pgm = slurp(out + "/typechange.pgm");
    CHECK(pgm.substr(0, 2) == "P5");
    // 16x16 16-bit pixels after the header
    CHECK(pgm.size() > 16 * 16 * 2);
}
