#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "frmcs/config.hpp"
#include "frmcs/measurement.hpp"
#include "frmcs/sweep.hpp"

namespace
{

void print_summary(const frmcs::RunReport& report)
{
    std::cout << report.summary_csv();
    if (!report.scenarios.empty())
    {
        std::cout << "\n" << report.scenarios_csv();
    }
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rail handover latency/reliability simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    bool emit_packets = false;
    bool emit_channel_trace = false;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    auto* simulate = app.add_subcommand("simulate", "Run one realization at one sweep point");
    std::uint64_t seed = 0;
    std::optional<double> sim_offset;
    std::optional<double> sim_ttt;
    simulate->add_option("--config", config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
    auto* seed_opt = simulate->add_option("--seed", seed, "Realization seed (default: base_seed)");
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--a3-offset", sim_offset, "A3 offset in dB (default: first grid value)");
    simulate->add_option("--ttt", sim_ttt, "Time-to-trigger in ms (default: first grid value)");
    simulate->add_flag("--emit-packets", emit_packets, "Write packets.csv");
    simulate->add_flag("--emit-channel-trace", emit_channel_trace, "Write channel_trace.csv");

    auto* sweep = app.add_subcommand("sweep", "Run the offset x TTT grid");
    std::optional<int> realizations;
    std::optional<double> scen_offset;
    std::optional<double> scen_ttt;
    sweep->add_option("--config", config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--realizations", realizations, "Realizations per grid point")->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--scenario-offset", scen_offset, "A3 offset for the use-case table (default: best p99.9)");
    sweep->add_option("--scenario-ttt", scen_ttt, "TTT for the use-case table (default: best p99.9)");
    sweep->add_flag("--emit-packets", emit_packets, "Write packets.csv");
    sweep->add_flag("--emit-channel-trace", emit_channel_trace, "Write channel_trace.csv");

    auto* report_cmd = app.add_subcommand("report", "Regenerate summary.csv and scenarios.csv from a run directory");
    std::string in_dir;
    report_cmd->add_option("--in", in_dir, "Run directory")->required()->check(CLI::ExistingDirectory);

    auto* trace_cmd = app.add_subcommand("a3-trace", "Replay a t_ms,m_p_dbm,m_n_dbm trace through the A3 machine");
    std::string trace_in;
    std::string trace_out;
    frmcs::A3Config a3;
    trace_cmd->add_option("--in", trace_in, "Trace CSV")->required()->check(CLI::ExistingFile);
    trace_cmd->add_option("--out", trace_out, "Report timestamps CSV (default: stdout)");
    trace_cmd->add_option("--offset", a3.offset_db, "A3 offset O in dB");
    trace_cmd->add_option("--hysteresis", a3.hysteresis_db, "Hysteresis H in dB")->check(CLI::NonNegativeNumber);
    trace_cmd->add_option("--ttt", a3.ttt_ms, "Time-to-trigger in ms")->check(CLI::PositiveNumber);

    app.add_subcommand("default-config", "Print the default configuration as JSON");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*simulate)
        {
            frmcs::ScenarioConfig cfg = frmcs::load_config(config_path);
            cfg.sweep.a3_offset_db = {sim_offset.value_or(cfg.sweep.a3_offset_db.front())};
            cfg.sweep.ttt_ms = {sim_ttt.value_or(cfg.sweep.ttt_ms.front())};
            frmcs::SweepOptions opts;
            opts.seeds = std::vector<std::uint64_t>{*seed_opt ? seed : cfg.base_seed};
            opts.realization.keep_packets = emit_packets;
            opts.realization.keep_channel_trace = emit_channel_trace;
            const auto report = frmcs::run_sweep(cfg, opts);
            report.write(out_dir, emit_packets, emit_channel_trace);
            print_summary(report);
        }
        else if (*sweep)
        {
            const frmcs::ScenarioConfig cfg = frmcs::load_config(config_path);
            frmcs::SweepOptions opts;
            opts.threads = threads;
            opts.realizations = realizations;
            if (scen_offset || scen_ttt)
            {
                opts.scenario_point = frmcs::SweepPoint{scen_offset.value_or(8.0), scen_ttt.value_or(160.0)};
            }
            opts.realization.keep_packets = emit_packets;
            opts.realization.keep_channel_trace = emit_channel_trace;
            const auto report = frmcs::run_sweep(cfg, opts);
            report.write(out_dir, emit_packets, emit_channel_trace);
            print_summary(report);
            std::cerr << "wall clock: " << report.wall_clock_s << " s\n";
        }
        else if (*report_cmd)
        {
            const auto report = frmcs::load_report(in_dir);
            std::ofstream(std::filesystem::path(in_dir) / "summary.csv", std::ios::binary) << report.summary_csv();
            std::ofstream(std::filesystem::path(in_dir) / "scenarios.csv", std::ios::binary) << report.scenarios_csv();
            print_summary(report);
        }
        else if (*trace_cmd)
        {
            std::ifstream in(trace_in);
            const auto times = frmcs::run_a3_trace(frmcs::read_a3_trace(in), a3);
            if (trace_out.empty())
            {
                frmcs::write_report_times(std::cout, times);
            }
            else
            {
                std::ofstream out(trace_out);
                frmcs::write_report_times(out, times);
            }
        }
        else
        {
            std::cout << frmcs::to_json(frmcs::ScenarioConfig{}).dump(2) << "\n";
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
