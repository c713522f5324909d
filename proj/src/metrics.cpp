#include "frmcs/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace frmcs
{

double reliability(std::span<const double> latencies_s, double bound_s)
{
    if (latencies_s.empty())
    {
        throw MetricsError("reliability: empty sample set");
    }
    std::size_t within = 0;
    for (double l : latencies_s)
    {
        if (l <= bound_s)
        {
            ++within;
        }
    }
    return static_cast<double>(within) / static_cast<double>(latencies_s.size()) * 100.0;
}

double latency_percentile_sorted(std::span<const double> sorted_s, double p)
{
    if (sorted_s.empty())
    {
        throw MetricsError("latency_percentile: empty sample set");
    }
    if (!(p > 0.0 && p <= 100.0))
    {
        throw MetricsError("latency_percentile: p outside (0, 100]");
    }
    const double n = static_cast<double>(sorted_s.size());
    const double x = p * n / 100.0;
    // Relative guard absorbs rounding in p * n when the exact product is integral.
    auto rank = static_cast<std::size_t>(std::ceil(x - 1e-12 * std::max(1.0, x)));
    rank = std::clamp<std::size_t>(rank, 1, sorted_s.size());
    return sorted_s[rank - 1];
}

double latency_percentile(std::span<const double> latencies_s, double p)
{
    std::vector<double> sorted(latencies_s.begin(), latencies_s.end());
    std::sort(sorted.begin(), sorted.end());
    return latency_percentile_sorted(sorted, p);
}

double normalized_outage(double outage_sum_s, double duration_s, int n_ues, int n_realizations)
{
    const double denom = duration_s * n_ues * n_realizations;
    if (!(denom > 0.0))
    {
        throw MetricsError("normalized_outage: zero denominator");
    }
    return outage_sum_s / denom * 100.0;
}

const std::vector<ScenarioRequirement>& frmcs_requirements()
{
    static const std::vector<ScenarioRequirement> rows{
        {"Voice Communication", 100.0, 99.9, 300e3},
        {"Critical Video Communication", 100.0, 99.9, 10e6},
        {"Very Critical Video Communication", 100.0, 99.9, 10e6},
        {"Standard Data Communication", 500.0, 99.9, 10e6},
        {"Critical Data Communication", 500.0, 99.9999, 500e3},
        {"Very Critical Data Communication", 100.0, 99.9999, 1e6},
        {"Messaging", std::nullopt, 99.9, 100e3},
    };
    return rows;
}

std::vector<ScenarioResult> evaluate_scenarios(std::span<const double> latencies_s,
                                               const std::vector<ScenarioRequirement>& requirements,
                                               std::optional<double> run_load_bps)
{
    std::vector<ScenarioResult> out;
    for (const auto& req : requirements)
    {
        if (!req.evaluable())
        {
            continue;
        }
        ScenarioResult r;
        r.name = req.name;
        r.latency_bound_ms = *req.latency_bound_ms;
        r.reliability_target_pct = req.reliability_target_pct;
        r.load_bps = req.load_bps;
        r.reliability_pct = reliability(latencies_s, r.latency_bound_ms / 1000.0);
        r.load_mismatch = run_load_bps && std::abs(*run_load_bps - req.load_bps) > 1e-6 * req.load_bps;
        r.pass = !r.load_mismatch && r.reliability_pct >= r.reliability_target_pct;
        out.push_back(r);
    }
    return out;
}

std::vector<double> pooled_sorted_latencies(std::span<const RealizationMetrics> runs)
{
    std::vector<double> all;
    for (const auto& r : runs)
    {
        all.insert(all.end(), r.latencies_s.begin(), r.latencies_s.end());
    }
    std::sort(all.begin(), all.end());
    return all;
}

PointSummary summarize_point(double a3_offset_db, double ttt_ms, std::span<const RealizationMetrics> runs)
{
    if (runs.empty())
    {
        throw MetricsError("summarize_point: no realizations");
    }
    PointSummary s;
    s.a3_offset_db = a3_offset_db;
    s.ttt_ms = ttt_ms;
    s.n_realizations = static_cast<int>(runs.size());

    double outage = 0.0;
    for (const auto& r : runs)
    {
        s.n_handovers += r.n_handovers;
        s.n_pingpongs += r.n_pingpongs;
        outage += r.total_outage_s;
    }
    s.normalized_outage_pct = normalized_outage(outage, runs.front().duration_s, runs.front().n_ues, s.n_realizations);

    const std::vector<double> all = pooled_sorted_latencies(runs);
    s.n_packets = all.size();
    if (!all.empty())
    {
        s.p999_latency_ms = latency_percentile_sorted(all, 99.9) * 1000.0;
        s.r_100ms = reliability(all, 0.1);
        s.r_500ms = reliability(all, 0.5);
    }
    return s;
}

}   // namespace frmcs
