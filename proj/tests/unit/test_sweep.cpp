#include <doctest.h>

#include <atomic>
#include <fstream>
#include <sstream>

#include "frmcs/sweep.hpp"

using namespace frmcs;

namespace
{
ScenarioConfig small_config()
{
    ScenarioConfig cfg;
    cfg.sim_duration_s = 20.0;
    cfg.n_realizations = 2;
    cfg.sweep.a3_offset_db = {2.0, 8.0};
    cfg.sweep.ttt_ms = {80.0, 240.0};
    return cfg;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}   // namespace

TEST_CASE("grid order and seeds")
{
    const auto pts = grid_points(small_config().sweep);
    REQUIRE(pts.size() == 4);
    CHECK(pts[1] == SweepPoint{2.0, 240.0});
    CHECK(pts[2] == SweepPoint{8.0, 80.0});
    ScenarioConfig cfg;
    cfg.base_seed = 10;
    CHECK(default_seeds(cfg, 3) == std::vector<std::uint64_t>{10, 11, 12});
}

TEST_CASE("parallel_for visits every index and rethrows")
{
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_WITH(parallel_for(10, 3,
                                   [](std::size_t i) {
                                       if (i == 4 || i == 7)
                                       {
                                           throw std::runtime_error("boom " + std::to_string(i));
                                       }
                                   }),
                      "boom 4");
}

TEST_CASE("sweep is independent of the thread count and rebuilds from disk")
{
    const ScenarioConfig cfg = small_config();
    SweepOptions serial;
    serial.threads = 1;
    SweepOptions parallel = serial;
    parallel.threads = 3;
    const RunReport a = run_sweep(cfg, serial);
    const RunReport b = run_sweep(cfg, parallel);
    CHECK(a.fingerprint() == b.fingerprint());
    REQUIRE(a.summaries.size() == 4);
    CHECK(a.scenario_point == a.points[a.best_point]);
    CHECK(a.scenarios.size() == 6);
    // Same seeds at every point.
    for (const auto& per_point : a.results)
    {
        CHECK(per_point[0].seed == cfg.base_seed);
        CHECK(per_point[1].seed == cfg.base_seed + 1);
    }

    const auto dir = std::filesystem::temp_directory_path() / "frmcs_sweep_test";
    std::filesystem::remove_all(dir);
    a.write(dir, false, false);
    for (const char* f : {"run_meta.json", "summary.csv", "scenarios.csv", "handovers.csv", "realizations.jsonl",
                          "timing.json"})
    {
        CHECK(std::filesystem::exists(dir / f));
    }
    const RunReport back = load_report(dir);
    CHECK(back.summary_csv() == slurp(dir / "summary.csv"));
    CHECK(back.scenarios_csv() == slurp(dir / "scenarios.csv"));
    CHECK(back.best_point == a.best_point);
    std::filesystem::remove_all(dir);
    CHECK_THROWS(load_report(dir));
}

TEST_CASE("explicit scenario point off the grid")
{
    ScenarioConfig cfg = small_config();
    cfg.sweep.a3_offset_db = {4.0};
    cfg.sweep.ttt_ms = {160.0};
    SweepOptions opt;
    opt.seeds = std::vector<std::uint64_t>{5};
    opt.scenario_point = SweepPoint{6.0, 80.0};
    const RunReport r = run_sweep(cfg, opt);
    CHECK(r.scenario_point == SweepPoint{6.0, 80.0});
    CHECK(r.scenario_runs.size() == 4);
    for (const auto& s : r.scenarios)
    {
        CHECK(!s.load_mismatch);
    }
}
