#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frmcs/config.hpp"
#include "frmcs/metrics.hpp"
#include "frmcs/simulation.hpp"

namespace frmcs
{

struct SweepOptions
{
    int threads = 1;
    /// Overrides cfg.n_realizations.
    std::optional<int> realizations;
    /// Overrides cfg.base_seed + r as the seed list.
    std::optional<std::vector<std::uint64_t>> seeds;
    /// Point used for the use-case table; defaults to the argmin of p99.9.
    std::optional<SweepPoint> scenario_point;
    bool evaluate_scenarios = true;
    RealizationOptions realization;
};

/// Realizations of one traffic load at the scenario point.
struct ScenarioLoadRun
{
    double load_bps = 0.0;
    std::vector<RealizationMetrics> runs;
};

struct RunReport
{
    ScenarioConfig config;
    std::vector<SweepPoint> points;
    std::vector<std::uint64_t> seeds;
    /// results[point][realization]; handovers/packets are only kept here.
    std::vector<std::vector<RealizationResult>> results;
    std::vector<PointSummary> summaries;
    std::size_t best_point = 0;
    std::optional<SweepPoint> scenario_point;
    std::vector<ScenarioLoadRun> scenario_runs;
    std::vector<ScenarioResult> scenarios;
    double wall_clock_s = 0.0;

    std::string summary_csv() const;
    std::string scenarios_csv() const;
    std::string handovers_csv() const;
    std::string packets_csv() const;
    std::string channel_trace_csv() const;
    std::string run_meta_json() const;
    std::string realizations_jsonl() const;

    /// Everything except wall-clock time; identical runs give identical bytes.
    std::string fingerprint() const;

    void write(const std::filesystem::path& dir, bool emit_packets, bool emit_channel_trace) const;
};

/// Grid points in offset-major order: (O0, T0), (O0, T1), ...
std::vector<SweepPoint> grid_points(const SweepGrid& grid);

std::vector<std::uint64_t> default_seeds(const ScenarioConfig& cfg, int n_realizations);

/// Runs fn(0..n-1) on up to `threads` workers. The first exception by index
/// is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Runs every (point, seed) realization, aggregates per point and evaluates
/// the use-case table at the scenario point for every distinct load.
RunReport run_sweep(const ScenarioConfig& cfg, const SweepOptions& options = {});

/// Rebuilds summaries and the scenario table from a written run directory
/// (run_meta.json + realizations.jsonl).
RunReport load_report(const std::filesystem::path& dir);

}   // namespace frmcs
