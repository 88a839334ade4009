#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "shuttlesim/cli.hpp"

using namespace shuttlesim::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load_config(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("validate accepts shipped configs and rejects broken ones") {
    for (const auto& name : {"potential_sweep", "j_vs_cycle", "dcphase_map", "cz_fidelity_budget",
                             "rb", "irb", "cz_calibration", "teleport_rabi", "teleport_phase_map",
                             "teleport_qpt"}) {
        auto cfg = load_config(std::string("configs/") + name + ".json");
        std::string msg;
        CHECK(validate_config(cfg, &msg) == kExitOk);
    }
    json bad;
    bad["scenario"] = "no-such-scenario";
    std::string msg;
    CHECK(validate_config(bad, &msg) == kExitValidation);
    CHECK(validate_config(json::object(), &msg) == kExitValidation);
}

TEST_CASE("potential sweep scenario writes its outputs and a manifest") {
    TempDir out("shuttlesim_test_pot");
    auto cfg = load_config("configs/potential_sweep.json");
    CHECK(run_scenario("potential-sweep", cfg, 1, out.path.string()) == kExitOk);
    CHECK(fs::exists(out.path / "profiles.csv"));
    CHECK(fs::exists(out.path / "extrema.csv"));
    auto manifest = load_config((out.path / "manifest.json").string());
    CHECK(manifest["scenario"] == "potential-sweep");
    CHECK(manifest["seed"] == 1);
    CHECK(manifest.contains("config_hash"));
    CHECK(manifest["versions"].size() > 0);
}

TEST_CASE("scenario output is deterministic for a fixed seed") {
    auto cfg = load_config("configs/rb.json");
    cfg["lengths"] = {1, 4, 16};
    cfg["sequences_per_length"] = 6;
    cfg["shots"] = 100;
    TempDir a("shuttlesim_test_det_a"), b("shuttlesim_test_det_b"), c("shuttlesim_test_det_c");
    REQUIRE(run_scenario("rb", cfg, 7, a.path.string()) == kExitOk);
    REQUIRE(run_scenario("rb", cfg, 7, b.path.string()) == kExitOk);
    REQUIRE(run_scenario("rb", cfg, 8, c.path.string()) == kExitOk);
    CHECK(slurp(a.path / "rb.csv") == slurp(b.path / "rb.csv"));
    CHECK(slurp(a.path / "rb.csv") != slurp(c.path / "rb.csv"));
}

TEST_CASE("fidelity budget scenario reports the calibrated numbers") {
    TempDir out("shuttlesim_test_budget");
    auto cfg = load_config("configs/cz_fidelity_budget.json");
    REQUIRE(run_scenario("cz-fidelity-budget", cfg, 1, out.path.string()) == kExitOk);
    auto budget = load_config((out.path / "budget.json").string());
    CHECK(budget["gate_time_ns"].get<double>() == doctest::Approx(58.0).epsilon(1e-9));
    CHECK(budget["integral_j_dt"].get<double>() == doctest::Approx(0.5).epsilon(1e-5));
    double coh = budget["coherent_infidelity"].get<double>();
    CHECK(coh > 3e-5);
    CHECK(coh < 3e-4);
    double deph = budget["dephasing_infidelity"].get<double>();
    CHECK(deph > 0.0011);
    CHECK(deph < 0.0044);
    CHECK(budget["sigma_rescale_factor"].get<double>() == doctest::Approx(1.08404).epsilon(1e-4));
}

TEST_CASE("numerical failures exit with code 3") {
    TempDir out("shuttlesim_test_numfail");
    auto cfg = load_config("configs/j_vs_cycle.json");
    cfg["cycle_max"] = 5.0;  // far outside the table hull
    CHECK(run_scenario("j-vs-cycle", cfg, 1, out.path.string()) == kExitNumerical);
    CHECK_FALSE(fs::exists(out.path / "manifest.json"));
}

TEST_CASE("missing config fields exit with code 2") {
    TempDir out("shuttlesim_test_valfail");
    json cfg;
    cfg["scenario"] = "j-vs-cycle";
    CHECK(run_scenario("j-vs-cycle", cfg, 1, out.path.string()) == kExitValidation);
}

TEST_CASE("calibration search finds an interior optimum near the expected bias") {
    std::vector<double> offsets{85, 90, 95, 100, 105, 110, 115};
    auto res = cz_calibration_search(offsets, 58.0, "fixtures/j_peak_vs_vb3.csv",
                                     "fixtures/j_vs_cycle.csv");
    CHECK_FALSE(res.boundary);
    CHECK(res.points.size() == offsets.size());
    // the optimum is the sampled point with the smallest metric
    double best_metric = 1e18;
    for (const auto& p : res.points) best_metric = std::min(best_metric, p.metric);
    for (const auto& p : res.points)
        if (p.offset_mV == res.optimal_offset_mV) CHECK(p.metric == doctest::Approx(best_metric));
    CHECK(res.optimal_offset_mV >= 90.0);
    CHECK(res.optimal_offset_mV <= 105.0);
}

TEST_CASE("calibration search flags a boundary optimum") {
    auto res = cz_calibration_search({65, 70, 75}, 58.0, "fixtures/j_peak_vs_vb3.csv",
                                     "fixtures/j_vs_cycle.csv");
    CHECK(res.boundary);
    CHECK(res.optimal_offset_mV == doctest::Approx(75.0));
}

TEST_CASE("heating shift moves the optimum toward lower exchange") {
    std::vector<double> offsets;
    for (double v = 85; v <= 115; v += 1.0) offsets.push_back(v);
    auto base = cz_calibration_search(offsets, 58.0, "fixtures/j_peak_vs_vb3.csv",
                                      "fixtures/j_vs_cycle.csv");
    auto shifted = cz_calibration_search(offsets, 58.0, "fixtures/j_peak_vs_vb3.csv",
                                         "fixtures/j_vs_cycle.csv", 2e6);
    CHECK(shifted.optimal_offset_mV < base.optimal_offset_mV);
}

TEST_CASE("calibration search rejects degenerate sweeps") {
    CHECK_THROWS(cz_calibration_search({90, 100}, 58.0, "fixtures/j_peak_vs_vb3.csv",
                                       "fixtures/j_vs_cycle.csv"));
    CHECK_THROWS(cz_calibration_search({85, 90, 95}, 6.0, "fixtures/j_peak_vs_vb3.csv",
                                       "fixtures/j_vs_cycle.csv"));
}

TEST_CASE("main entry parses run and fit subcommands") {
    TempDir out("shuttlesim_test_main");
    std::string out_str = out.path.string();
    {
        const char* argv[] = {"shuttlesim_cli", "run",   "j-vs-cycle",
                              "--config",       "configs/j_vs_cycle.json",
                              "--seed",         "3",     "--out",
                              out_str.c_str()};
        CHECK(main_entry(9, const_cast<char**>(argv)) == kExitOk);
        CHECK(fs::exists(out.path / "j_vs_cycle.csv"));
    }
    {
        const char* argv[] = {"shuttlesim_cli", "validate", "--config", "configs/rb.json"};
        CHECK(main_entry(4, const_cast<char**>(argv)) == kExitOk);
    }
    {
        const char* argv[] = {"shuttlesim_cli", "validate", "--config", "configs/missing.json"};
        CHECK(main_entry(4, const_cast<char**>(argv)) == kExitValidation);
    }
}
