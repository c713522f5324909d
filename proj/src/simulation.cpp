#include "frmcs/simulation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "frmcs/layout.hpp"
#include "frmcs/measurement.hpp"
#include "frmcs/radio.hpp"

namespace frmcs
{
namespace
{

struct UeState
{
    TrainTrajectory trajectory;
    ChannelModel channel;
    std::vector<L3FilterState> filters;
    Eigen::ArrayXd filtered;
    A3EventMachine events;
    std::optional<HandoverEngine> handover;
    RateTrace rate;
};

void check(bool ok, const std::string& what)
{
    if (!ok)
    {
        throw std::logic_error("run_realization invariant violated: " + what);
    }
}

}   // namespace

RealizationResult run_realization(const ScenarioConfig& cfg, SweepPoint point, std::uint64_t seed,
                                  const RealizationOptions& options)
{
    validate(cfg);
    const Layout layout = build_layout(cfg);
    const int n_sites = layout.n_sites();
    const int n_ues = cfg.n_trains;

    A3Config a3 = cfg.measurement;
    a3.offset_db = point.a3_offset_db;
    a3.ttt_ms = point.ttt_ms;

    const double step = cfg.step_s;
    const auto n_steps = static_cast<long>(std::llround(cfg.sim_duration_s / step));
    const long l1_every = std::max(1L, static_cast<long>(std::llround(a3.l1_period_ms / 1000.0 / step)));

    Rng start_rng = make_rng(seed, Stream::TrainStart);
    std::uniform_real_distribution<double> start_dist(0.0, cfg.track_length_m);

    std::vector<UeState> ues;
    ues.reserve(static_cast<std::size_t>(n_ues));
    for (int ue = 0; ue < n_ues; ++ue)
    {
        ues.push_back(UeState{make_trajectory(cfg, ue, start_dist(start_rng)),
                              ChannelModel(cfg, layout, seed, ue),
                              std::vector<L3FilterState>(static_cast<std::size_t>(n_sites)),
                              Eigen::ArrayXd::Zero(n_sites),
                              A3EventMachine(a3, ue),
                              std::nullopt,
                              RateTrace{step, std::vector<double>(static_cast<std::size_t>(n_steps))}});
    }

    RealizationResult result;
    result.point = point;
    result.seed = seed;

    for (long k = 0; k < n_steps; ++k)
    {
        const double t = static_cast<double>(k) * step;
        const bool l1_sample = (k % l1_every) == 0;
        for (int ue = 0; ue < n_ues; ++ue)
        {
            UeState& u = ues[static_cast<std::size_t>(ue)];
            const Vec2 pos = train_position(u.trajectory, t);
            const LinkSnapshot snap = u.channel.evaluate(pos, u.trajectory.speed_mps * t);

            if (!u.handover)
            {
                Eigen::Index best = 0;
                snap.rsrp_dbm.maxCoeff(&best);
                u.handover.emplace(ue, static_cast<int>(best), cfg.handover,
                                   make_rng(seed, Stream::HandoverTiming, {static_cast<std::uint64_t>(ue)}));
            }
            HandoverEngine& ho = *u.handover;
            if (ho.complete_if_due(t))
            {
                u.events.reset();
            }

            if (l1_sample)
            {
                for (int s = 0; s < n_sites; ++s)
                {
                    u.filtered(s) = l3_filter_update(u.filters[static_cast<std::size_t>(s)], snap.rsrp_dbm(s),
                                                     a3.l3_filter_k);
                }
                if (!ho.in_progress())
                {
                    if (auto report = u.events.step(t, u.filtered, ho.serving_cell(t)))
                    {
                        ho.start(*report);
                    }
                }
                if (options.keep_channel_trace)
                {
                    for (int s = 0; s < n_sites; ++s)
                    {
                        result.channel_trace.push_back(ChannelTraceRow{t, ue, s, bool(snap.los(s)),
                                                                       snap.pathloss_db(s), snap.shadow_db(s),
                                                                       snap.rsrp_dbm(s)});
                    }
                }
            }

            // Before detach data still flows through the source; inside the
            // outage the rate is ignored; afterwards the target carries it.
            const int serving = ho.serving_cell(t);
            const int data_cell = serving >= 0 ? serving : ho.data_cell();
            const double sinr = sinr_db(snap.rsrp_dbm, data_cell, u.channel.noise_dbm(), cfg.radio.interference_mode);
            u.rate.bps[static_cast<std::size_t>(k)] = link_rate_bps(
                sinr, cfg.bandwidth_hz, cfg.radio.max_spectral_efficiency_bps_hz, cfg.radio.spatial_layers);
        }
    }

    RealizationMetrics& m = result.metrics;
    m.duration_s = cfg.sim_duration_s;
    m.n_ues = n_ues;

    const std::array<Direction, 2> dirs{Direction::Uplink, Direction::Downlink};
    for (int ue = 0; ue < n_ues; ++ue)
    {
        UeState& u = ues[static_cast<std::size_t>(ue)];
        HandoverEngine& ho = *u.handover;
        ho.complete_if_due(std::numeric_limits<double>::infinity());

        double record_outage = 0.0;
        for (const auto& r : ho.records())
        {
            check(r.t_report < r.t_command || cfg.handover.prep_delay_ms == 0.0, "t_report < t_command");
            check(r.t_command <= r.t_detach && r.t_detach < r.t_rach_start && r.t_rach_start <= r.t_complete,
                  "handover timestamp ordering");
            record_outage += r.t_complete - r.t_detach;
            m.n_handovers += 1;
            m.n_pingpongs += r.is_pingpong ? 1 : 0;
            result.handovers.push_back(r);
        }
        double interval_outage = 0.0;
        for (const auto& o : ho.outages())
        {
            interval_outage += o.duration_s();
            result.outages.push_back(o);
        }
        check(record_outage == interval_outage, "outage sum conservation");
        m.total_outage_s += interval_outage;

        for (Direction dir : dirs)
        {
            if ((dir == Direction::Uplink && !cfg.traffic.uplink) || (dir == Direction::Downlink && !cfg.traffic.downlink))
            {
                continue;
            }
            Rng traffic_rng =
                make_rng(seed, Stream::Traffic, {static_cast<std::uint64_t>(ue), static_cast<std::uint64_t>(dir)});
            const std::vector<double> arrivals =
                generate_arrivals(traffic_rng, cfg.traffic.arrival_rate_pps, cfg.sim_duration_s);
            std::vector<PacketRecord> packets =
                serve_queue(arrivals, cfg.traffic.packet_size_bits, u.rate, ho.outages(), ue, dir);
            m.n_generated += arrivals.size();
            for (const auto& p : packets)
            {
                check(p.latency_s() > 0.0, "positive packet latency");
                m.latencies_s.push_back(p.latency_s());
                m.flushed.push_back(p.flushed);
            }
            m.n_departed += packets.size();
            if (options.keep_packets)
            {
                result.packets.insert(result.packets.end(), packets.begin(), packets.end());
            }
        }
    }
    check(m.n_generated == m.n_departed, "packet conservation");
    check(m.n_pingpongs <= m.n_handovers, "ping-pongs bounded by handovers");
    return result;
}

void write_channel_trace_csv_header(std::ostream& out) { out << "t,ue,site,los,pl_db,sf_db,rsrp_dbm"; }

void write_channel_trace_csv_row(std::ostream& out, const ChannelTraceRow& row)
{
    out << fmt::format("{},{},{},{},{},{},{}", row.t_s, row.ue, row.site, row.los ? 1 : 0, row.pathloss_db,
                       row.shadow_db, row.rsrp_dbm);
}

}   // namespace frmcs
