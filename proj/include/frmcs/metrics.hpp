#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace frmcs
{

class MetricsError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// r(L) = 100/N * #{l_i <= L}.
double reliability(std::span<const double> latencies_s, double bound_s);

/// Nearest rank: the ceil(p/100 * N)-th smallest value (1-based), p in (0, 100].
double latency_percentile(std::span<const double> latencies_s, double p);

/// Same as latency_percentile on an already ascending sample.
double latency_percentile_sorted(std::span<const double> sorted_s, double p);

/// sum(o_i) / (T K R) * 100.
double normalized_outage(double outage_sum_s, double duration_s, int n_ues, int n_realizations);

/// One row of the FRMCS use-case table at train speeds up to 500 km/h.
struct ScenarioRequirement
{
    std::string name;
    std::optional<double> latency_bound_ms;   // none: not evaluable (Messaging)
    double reliability_target_pct = 0.0;
    double load_bps = 0.0;

    bool evaluable() const { return latency_bound_ms.has_value(); }
};

/// The 500 km/h rows, including Messaging flagged as not evaluable.
const std::vector<ScenarioRequirement>& frmcs_requirements();

struct ScenarioResult
{
    std::string name;
    double latency_bound_ms = 0.0;
    double reliability_target_pct = 0.0;
    double load_bps = 0.0;
    double reliability_pct = 0.0;
    bool pass = false;
    bool load_mismatch = false;
};

/// Evaluates every evaluable requirement against one latency sample.
/// When `run_load_bps` is given, rows whose load differs are flagged
/// `load_mismatch` and never pass.
std::vector<ScenarioResult> evaluate_scenarios(std::span<const double> latencies_s,
                                               const std::vector<ScenarioRequirement>& requirements,
                                               std::optional<double> run_load_bps = std::nullopt);

struct RealizationMetrics
{
    std::vector<double> latencies_s;
    std::vector<bool> flushed;
    int n_handovers = 0;
    int n_pingpongs = 0;
    double total_outage_s = 0.0;
    std::size_t n_generated = 0;
    std::size_t n_departed = 0;
    double duration_s = 0.0;
    int n_ues = 0;

    bool operator==(const RealizationMetrics&) const = default;
};

/// Pooled statistics of one sweep point across its realizations.
struct PointSummary
{
    double a3_offset_db = 0.0;
    double ttt_ms = 0.0;
    std::size_t n_packets = 0;
    double p999_latency_ms = 0.0;
    long n_handovers = 0;
    long n_pingpongs = 0;
    double normalized_outage_pct = 0.0;
    double r_100ms = 0.0;
    double r_500ms = 0.0;
    int n_realizations = 0;
};

/// Pools packets of all realizations before taking percentiles.
PointSummary summarize_point(double a3_offset_db, double ttt_ms, std::span<const RealizationMetrics> runs);

/// All latencies of `runs` concatenated and sorted ascending.
std::vector<double> pooled_sorted_latencies(std::span<const RealizationMetrics> runs);

}   // namespace frmcs
