#include "frmcs/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace frmcs
{
namespace
{

constexpr const char* kFormatVersion = "frmcs-sim/1";

RealizationMetrics metrics_from_json(const json& j)
{
    RealizationMetrics m;
    m.latencies_s = j.at("latencies_s").get<std::vector<double>>();
    m.flushed = j.at("flushed").get<std::vector<bool>>();
    m.n_handovers = j.at("n_handovers").get<int>();
    m.n_pingpongs = j.at("n_pingpongs").get<int>();
    m.total_outage_s = j.at("total_outage_s").get<double>();
    m.n_generated = j.at("n_generated").get<std::size_t>();
    m.n_departed = j.at("n_departed").get<std::size_t>();
    m.duration_s = j.at("duration_s").get<double>();
    m.n_ues = j.at("n_ues").get<int>();
    return m;
}

json metrics_to_json(const RealizationMetrics& m)
{
    return json{{"n_handovers", m.n_handovers}, {"n_pingpongs", m.n_pingpongs},
                {"total_outage_s", m.total_outage_s}, {"n_generated", m.n_generated},
                {"n_departed", m.n_departed}, {"duration_s", m.duration_s},
                {"n_ues", m.n_ues}, {"latencies_s", m.latencies_s},
                {"flushed", m.flushed}};
}

std::size_t argmin_p999(const std::vector<PointSummary>& summaries)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < summaries.size(); ++i)
    {
        if (summaries[i].p999_latency_ms < summaries[best].p999_latency_ms)
        {
            best = i;
        }
    }
    return best;
}

/// Distinct loads of the evaluable requirements, in table order.
std::vector<double> requirement_loads()
{
    std::vector<double> loads;
    for (const auto& req : frmcs_requirements())
    {
        if (req.evaluable() && std::find(loads.begin(), loads.end(), req.load_bps) == loads.end())
        {
            loads.push_back(req.load_bps);
        }
    }
    return loads;
}

std::vector<ScenarioResult> evaluate_scenario_table(const std::vector<ScenarioLoadRun>& runs)
{
    std::map<std::string, ScenarioResult> by_name;
    for (const auto& run : runs)
    {
        std::vector<ScenarioRequirement> reqs;
        for (const auto& req : frmcs_requirements())
        {
            if (req.evaluable() && req.load_bps == run.load_bps)
            {
                reqs.push_back(req);
            }
        }
        const std::vector<double> pooled = pooled_sorted_latencies(run.runs);
        if (pooled.empty())
        {
            continue;
        }
        for (auto& r : evaluate_scenarios(pooled, reqs, run.load_bps))
        {
            by_name[r.name] = r;
        }
    }
    std::vector<ScenarioResult> out;
    for (const auto& req : frmcs_requirements())
    {
        if (auto it = by_name.find(req.name); it != by_name.end())
        {
            out.push_back(it->second);
        }
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

}   // namespace

std::vector<SweepPoint> grid_points(const SweepGrid& grid)
{
    std::vector<SweepPoint> points;
    for (double o : grid.a3_offset_db)
    {
        for (double ttt : grid.ttt_ms)
        {
            points.push_back(SweepPoint{o, ttt});
        }
    }
    return points;
}

std::vector<std::uint64_t> default_seeds(const ScenarioConfig& cfg, int n_realizations)
{
    std::vector<std::uint64_t> seeds;
    for (int r = 0; r < n_realizations; ++r)
    {
        seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(r));
    }
    return seeds;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n_workers = static_cast<std::size_t>(std::max(1, threads));
    if (n_workers == 1 || n <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(n_workers, n); ++w)
        {
            pool.emplace_back(worker);
        }
        for (auto& th : pool)
        {
            th.join();
        }
    }
    for (auto& e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
}

RunReport run_sweep(const ScenarioConfig& cfg, const SweepOptions& options)
{
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();

    RunReport report;
    report.config = cfg;
    report.points = grid_points(cfg.sweep);
    report.seeds = options.seeds ? *options.seeds
                                 : default_seeds(cfg, options.realizations.value_or(cfg.n_realizations));
    if (report.seeds.empty())
    {
        throw std::invalid_argument("run_sweep: no seeds");
    }
    report.config.n_realizations = static_cast<int>(report.seeds.size());

    const std::size_t n_seeds = report.seeds.size();
    report.results.assign(report.points.size(), std::vector<RealizationResult>(n_seeds));
    parallel_for(report.points.size() * n_seeds, options.threads, [&](std::size_t i) {
        const std::size_t p = i / n_seeds;
        const std::size_t s = i % n_seeds;
        report.results[p][s] = run_realization(cfg, report.points[p], report.seeds[s], options.realization);
    });

    for (std::size_t p = 0; p < report.points.size(); ++p)
    {
        std::vector<RealizationMetrics> runs;
        for (const auto& r : report.results[p])
        {
            runs.push_back(r.metrics);
        }
        report.summaries.push_back(summarize_point(report.points[p].a3_offset_db, report.points[p].ttt_ms, runs));
    }
    report.best_point = argmin_p999(report.summaries);

    if (options.evaluate_scenarios)
    {
        const SweepPoint sp = options.scenario_point.value_or(report.points[report.best_point]);
        report.scenario_point = sp;
        const auto grid_it = std::find(report.points.begin(), report.points.end(), sp);

        for (double load : requirement_loads())
        {
            ScenarioLoadRun run;
            run.load_bps = load;
            if (grid_it != report.points.end() && std::abs(load - cfg.traffic.load_bps()) <= 1e-6 * load)
            {
                for (const auto& r : report.results[std::size_t(grid_it - report.points.begin())])
                {
                    run.runs.push_back(r.metrics);
                }
            }
            else
            {
                ScenarioConfig scfg = cfg;
                scfg.traffic.arrival_rate_pps = load / cfg.traffic.packet_size_bits;
                run.runs.resize(n_seeds);
                parallel_for(n_seeds, options.threads, [&](std::size_t s) {
                    run.runs[s] = run_realization(scfg, sp, report.seeds[s]).metrics;
                });
            }
            report.scenario_runs.push_back(std::move(run));
        }
        report.scenarios = evaluate_scenario_table(report.scenario_runs);
    }

    report.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string RunReport::summary_csv() const
{
    std::string out =
        "a3_offset_db,ttt_ms,n_packets,p999_latency_ms,n_handovers,n_pingpongs,normalized_outage_pct,r_100ms,r_500ms\n";
    for (const auto& s : summaries)
    {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", s.a3_offset_db, s.ttt_ms, s.n_packets, s.p999_latency_ms,
                           s.n_handovers, s.n_pingpongs, s.normalized_outage_pct, s.r_100ms, s.r_500ms);
    }
    return out;
}

std::string RunReport::scenarios_csv() const
{
    std::string out =
        "scenario,latency_bound_ms,reliability_target_pct,load_bps,a3_offset_db,ttt_ms,reliability_pct,pass\n";
    for (const auto& r : scenarios)
    {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", r.name, r.latency_bound_ms, r.reliability_target_pct,
                           r.load_bps, scenario_point ? scenario_point->a3_offset_db : 0.0,
                           scenario_point ? scenario_point->ttt_ms : 0.0, r.reliability_pct, r.pass ? 1 : 0);
    }
    return out;
}

std::string RunReport::handovers_csv() const
{
    std::ostringstream out;
    out << "a3_offset_db,ttt_ms,seed,";
    write_handover_csv_header(out);
    out << '\n';
    for (const auto& per_point : results)
    {
        for (const auto& r : per_point)
        {
            for (const auto& h : r.handovers)
            {
                out << fmt::format("{},{},{},", r.point.a3_offset_db, r.point.ttt_ms, r.seed);
                write_handover_csv_row(out, h);
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string RunReport::packets_csv() const
{
    std::ostringstream out;
    out << "a3_offset_db,ttt_ms,seed,";
    write_packet_csv_header(out);
    out << '\n';
    for (const auto& per_point : results)
    {
        for (const auto& r : per_point)
        {
            for (const auto& p : r.packets)
            {
                out << fmt::format("{},{},{},", r.point.a3_offset_db, r.point.ttt_ms, r.seed);
                write_packet_csv_row(out, p);
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string RunReport::channel_trace_csv() const
{
    std::ostringstream out;
    out << "a3_offset_db,ttt_ms,seed,";
    write_channel_trace_csv_header(out);
    out << '\n';
    for (const auto& per_point : results)
    {
        for (const auto& r : per_point)
        {
            for (const auto& row : r.channel_trace)
            {
                out << fmt::format("{},{},{},", r.point.a3_offset_db, r.point.ttt_ms, r.seed);
                write_channel_trace_csv_row(out, row);
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string RunReport::run_meta_json() const
{
    json points_j = json::array();
    for (const auto& p : points)
    {
        points_j.push_back({{"a3_offset_db", p.a3_offset_db}, {"ttt_ms", p.ttt_ms}});
    }
    json meta{{"format", kFormatVersion},
              {"config", to_json(config)},
              {"seeds", seeds},
              {"points", points_j},
              {"best_point", best_point}};
    if (scenario_point)
    {
        meta["scenario_point"] = {{"a3_offset_db", scenario_point->a3_offset_db}, {"ttt_ms", scenario_point->ttt_ms}};
    }
    return meta.dump(2) + "\n";
}

std::string RunReport::realizations_jsonl() const
{
    std::string out;
    for (std::size_t p = 0; p < results.size(); ++p)
    {
        for (const auto& r : results[p])
        {
            json line = metrics_to_json(r.metrics);
            line["kind"] = "grid";
            line["point"] = p;
            line["seed"] = r.seed;
            out += line.dump() + "\n";
        }
    }
    for (const auto& run : scenario_runs)
    {
        for (std::size_t s = 0; s < run.runs.size(); ++s)
        {
            json line = metrics_to_json(run.runs[s]);
            line["kind"] = "scenario";
            line["load_bps"] = run.load_bps;
            line["seed"] = seeds.at(s);
            out += line.dump() + "\n";
        }
    }
    return out;
}

std::string RunReport::fingerprint() const
{
    return run_meta_json() + summary_csv() + scenarios_csv() + handovers_csv() + realizations_jsonl();
}

void RunReport::write(const std::filesystem::path& dir, bool emit_packets, bool emit_channel_trace) const
{
    std::filesystem::create_directories(dir);
    write_file(dir / "run_meta.json", run_meta_json());
    write_file(dir / "summary.csv", summary_csv());
    write_file(dir / "scenarios.csv", scenarios_csv());
    write_file(dir / "handovers.csv", handovers_csv());
    write_file(dir / "realizations.jsonl", realizations_jsonl());
    write_file(dir / "timing.json", json{{"wall_clock_s", wall_clock_s}}.dump(2) + "\n");
    if (emit_packets)
    {
        write_file(dir / "packets.csv", packets_csv());
    }
    if (emit_channel_trace)
    {
        write_file(dir / "channel_trace.csv", channel_trace_csv());
    }
}

RunReport load_report(const std::filesystem::path& dir)
{
    std::ifstream meta_in(dir / "run_meta.json");
    if (!meta_in)
    {
        throw std::runtime_error("cannot open " + (dir / "run_meta.json").string());
    }
    const json meta = json::parse(meta_in);
    if (meta.at("format") != kFormatVersion)
    {
        throw std::runtime_error("unsupported run format");
    }

    RunReport report;
    report.config = parse_config(meta.at("config"));
    report.seeds = meta.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& p : meta.at("points"))
    {
        report.points.push_back(SweepPoint{p.at("a3_offset_db").get<double>(), p.at("ttt_ms").get<double>()});
    }
    if (meta.contains("scenario_point"))
    {
        const auto& sp = meta.at("scenario_point");
        report.scenario_point = SweepPoint{sp.at("a3_offset_db").get<double>(), sp.at("ttt_ms").get<double>()};
    }

    report.results.assign(report.points.size(), {});
    std::map<double, std::size_t> load_index;
    std::ifstream lines(dir / "realizations.jsonl");
    if (!lines)
    {
        throw std::runtime_error("cannot open " + (dir / "realizations.jsonl").string());
    }
    std::string line;
    while (std::getline(lines, line))
    {
        if (line.empty())
        {
            continue;
        }
        const json j = json::parse(line);
        RealizationMetrics m = metrics_from_json(j);
        if (j.at("kind") == "grid")
        {
            const auto p = j.at("point").get<std::size_t>();
            RealizationResult r;
            r.point = report.points.at(p);
            r.seed = j.at("seed").get<std::uint64_t>();
            r.metrics = std::move(m);
            report.results.at(p).push_back(std::move(r));
        }
        else
        {
            const double load = j.at("load_bps").get<double>();
            auto [it, inserted] = load_index.try_emplace(load, report.scenario_runs.size());
            if (inserted)
            {
                report.scenario_runs.push_back(ScenarioLoadRun{load, {}});
            }
            report.scenario_runs[it->second].runs.push_back(std::move(m));
        }
    }

    for (std::size_t p = 0; p < report.points.size(); ++p)
    {
        std::vector<RealizationMetrics> runs;
        for (const auto& r : report.results[p])
        {
            runs.push_back(r.metrics);
        }
        report.summaries.push_back(summarize_point(report.points[p].a3_offset_db, report.points[p].ttt_ms, runs));
    }
    report.best_point = argmin_p999(report.summaries);
    report.scenarios = evaluate_scenario_table(report.scenario_runs);
    return report;
}

}   // namespace frmcs
