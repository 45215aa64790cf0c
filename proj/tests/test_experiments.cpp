#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hlp/experiments.hpp"

using namespace hlp;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("hlp_test_" + tag);
    fs::remove_all(p);
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config parsing") {
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "L = 2\n"
        "d = 1\n"
        "alpha = 0.9  # long-range exponent\n"
        "theta = 1.1\n"
        "# a full-line comment\n"
        "n = 6,8,10\n"
        "suite = phase-sweep\n"
        "replicates = 25\n"
        "master_seed = 99\n"
        "epsilons = -0.5,0.5\n");
    CHECK(cfg.L == 2);
    CHECK(cfg.alpha == doctest::Approx(0.9));
    CHECK(cfg.n_grid == std::vector<std::uint32_t>{6, 8, 10});
    CHECK(cfg.suite == "phase-sweep");
    CHECK(cfg.replicates == 25);
    CHECK(cfg.master_seed == 99);
    REQUIRE(cfg.epsilons.size() == 2);
    CHECK(cfg.epsilons[0] == doctest::Approx(-0.5));
    CHECK_NOTHROW(cfg.validate());

    // duplicate keys are rejected
    CHECK_THROWS(ExperimentConfig::parse_text("L = 2\nL = 3\n"));
    // malformed lines are rejected
    CHECK_THROWS(ExperimentConfig::parse_text("just words\n"));
    // unknown suites fail validation, not parsing
    ExperimentConfig bad = ExperimentConfig::parse_text(
        "alpha = 0.9\ntheta = 1.1\nn = 6\nsuite = nonsense\n");
    CHECK_THROWS(bad.validate());
    // infeasible kernel parameters fail validation
    ExperimentConfig infeasible = ExperimentConfig::parse_text(
        "alpha = 0.9\ntheta = 0.5\nn = 6\nsuite = phase-sweep\n");
    CHECK_THROWS(infeasible.validate());
}

TEST_CASE("config hash is stable and order-insensitive") {
    ExperimentConfig a = ExperimentConfig::parse_text(
        "alpha = 0.9\ntheta = 1.1\nn = 6\nsuite = branching\n");
    ExperimentConfig b = ExperimentConfig::parse_text(
        "suite = branching\nn = 6\ntheta = 1.1\nalpha = 0.9\n");
    CHECK(a.hash() == b.hash());
    ExperimentConfig c = ExperimentConfig::parse_text(
        "alpha = 0.9\ntheta = 1.1\nn = 7\nsuite = branching\n");
    CHECK(a.hash() != c.hash());
    CHECK(a.canonical_text() == b.canonical_text());
}

TEST_CASE("csv writer produces commented headers and is write-once") {
    ExperimentConfig cfg = ExperimentConfig::parse_text(
        "alpha = 0.9\ntheta = 1.1\nn = 6\nsuite = branching\n"
        "master_seed = 7\n");
    std::string dir = fresh_dir("csv");
    fs::create_directories(dir);
    std::string path = dir + "/out.csv";
    {
        CsvWriter w(path, cfg, "a,b");
        w.row("1,2.5");
        w.row("2,3.5");
    }
    std::string text = slurp(path);
    CHECK(text.find("# schema=") != std::string::npos);
    CHECK(text.find("# master_seed=7") != std::string::npos);
    CHECK(text.find("# alpha=0.9") != std::string::npos);
    CHECK(text.find("\na,b\n") != std::string::npos);
    CHECK(text.find("1,2.5\n") != std::string::npos);

    // a second writer on the same path refuses to clobber
    CHECK_THROWS(CsvWriter(path, cfg, "a,b"));

    std::vector<double> col = read_csv_column(path, "b");
    REQUIRE(col.size() == 2);
    CHECK(col[0] == doctest::Approx(2.5));
    CHECK(col[1] == doctest::Approx(3.5));
    CHECK_THROWS(read_csv_column(path, "missing"));
    fs::remove_all(dir);
}

TEST_CASE("comparing a sample with itself gives zero distance") {
    Rng rng(3);
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(rng.normal());
    DistanceReport r = compare_scalar(xs, xs, rng);
    CHECK(r.value == doctest::Approx(0.0));

    std::vector<std::int64_t> is;
    for (int i = 0; i < 200; ++i) is.push_back(static_cast<std::int64_t>(rng.below(5)));
    DistanceReport t = compare_integer(is, is, rng);
    CHECK(t.value == doctest::Approx(0.0));
}

TEST_CASE("run_suite writes reproducible artifacts") {
    std::string dir1 = fresh_dir("run1");
    std::string dir2 = fresh_dir("run2");
    auto make = [&](const std::string& dir) {
        return ExperimentConfig::parse_text(
            "alpha = 0.9\ntheta = 1.1\nlambda = 0\nn = 4\n"
            "suite = coalescent-reference\nreplicates = 3\n"
            "master_seed = 5\ngrid_dt = 0.01\n"
            "output_dir = " + dir + "\n");
    };
    RunManifest m1 = run_suite(make(dir1));
    RunManifest m2 = run_suite(make(dir2));
    REQUIRE(!m1.outputs.empty());
    CHECK(m1.replicate_seeds.size() == 3);
    CHECK(m1.replicate_seeds == m2.replicate_seeds);
    CHECK(!m1.config_hash.empty());
    CHECK(fs::exists(fs::path(dir1) / "manifest.json"));

    // artifacts are byte-identical apart from the differing output_dir
    REQUIRE(m1.outputs.size() == m2.outputs.size());
    for (std::size_t i = 0; i < m1.outputs.size(); ++i) {
        std::string a = slurp(m1.outputs[i]);
        std::string b = slurp(m2.outputs[i]);
        auto strip = [](std::string s, const std::string& dir) {
            std::size_t pos;
            while ((pos = s.find(dir)) != std::string::npos)
                s.erase(pos, dir.size());
            return s;
        };
        CHECK(strip(a, dir1) == strip(b, dir2));
    }

    // write-once: rerunning into the same directory throws
    CHECK_THROWS(run_suite(make(dir1)));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}
