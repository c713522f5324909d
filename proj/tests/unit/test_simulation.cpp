#include <doctest.h>

#include <sstream>

#include "frmcs/simulation.hpp"

using namespace frmcs;

namespace
{
ScenarioConfig short_config()
{
    ScenarioConfig cfg;
    cfg.sim_duration_s = 30.0;
    return cfg;
}
}   // namespace

TEST_CASE("realization is deterministic for a seed")
{
    const ScenarioConfig cfg = short_config();
    const auto a = run_realization(cfg, {4.0, 160.0}, 7);
    const auto b = run_realization(cfg, {4.0, 160.0}, 7);
    CHECK(a.metrics == b.metrics);
    REQUIRE(a.handovers.size() == b.handovers.size());
    for (std::size_t i = 0; i < a.handovers.size(); ++i)
    {
        CHECK(a.handovers[i].t_complete == b.handovers[i].t_complete);
        CHECK(a.handovers[i].t_iu_ms == b.handovers[i].t_iu_ms);
    }
    const auto c = run_realization(cfg, {4.0, 160.0}, 8);
    CHECK(!(a.metrics == c.metrics));
}

TEST_CASE("conservation and bookkeeping")
{
    const ScenarioConfig cfg = short_config();
    RealizationOptions opt;
    opt.keep_packets = true;
    for (std::uint64_t seed : {1, 2, 3})
    {
        const auto r = run_realization(cfg, {2.0, 80.0}, seed, opt);
        const auto& m = r.metrics;
        CHECK(m.n_generated == m.n_departed);
        CHECK(m.latencies_s.size() == m.n_generated);
        CHECK(r.packets.size() == m.n_generated);
        CHECK(m.n_pingpongs <= m.n_handovers);
        CHECK(static_cast<std::size_t>(m.n_handovers) == r.handovers.size());
        CHECK(r.outages.size() == r.handovers.size());

        double outage = 0.0;
        for (const auto& o : r.outages)
        {
            outage += o.duration_s();
            CHECK(o.duration_s() > 0.027 + 0.005);
            CHECK(o.duration_s() <= 0.047 + 0.005 + 1e-12);
        }
        CHECK(outage == doctest::Approx(m.total_outage_s));

        // Per UE, handovers are sequential and chain source -> target.
        for (int ue = 0; ue < cfg.n_trains; ++ue)
        {
            const HandoverRecord* prev = nullptr;
            for (const auto& h : r.handovers)
            {
                if (h.ue_id != ue)
                {
                    continue;
                }
                CHECK(h.source_cell != h.target_cell);
                if (prev)
                {
                    CHECK(h.source_cell == prev->target_cell);
                    CHECK(h.t_report >= prev->t_complete);
                }
                prev = &h;
            }
        }
        for (const auto& p : r.packets)
        {
            CHECK(p.latency_s() > 0.0);
            CHECK(p.flushed == (p.departure_s > cfg.sim_duration_s));
        }
    }
}

TEST_CASE("larger offset and TTT hand over less")
{
    const ScenarioConfig cfg = short_config();
    int eager = 0;
    int lazy = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
    {
        eager += run_realization(cfg, {2.0, 80.0}, seed).metrics.n_handovers;
        lazy += run_realization(cfg, {8.0, 240.0}, seed).metrics.n_handovers;
    }
    CHECK(lazy <= eager);
    CHECK(eager > 0);
}

TEST_CASE("deterministic channel hands over near the cell edge")
{
    ScenarioConfig cfg = short_config();
    cfg.radio.shadowing_enabled = false;
    cfg.radio.stochastic_los = false;
    cfg.n_trains = 1;
    RealizationOptions opt;
    opt.keep_channel_trace = true;
    const auto r = run_realization(cfg, {2.0, 80.0}, 1, opt);
    REQUIRE(!r.handovers.empty());
    CHECK(!r.channel_trace.empty());
    for (const auto& h : r.handovers)
    {
        CHECK(!h.is_pingpong);
    }
}

TEST_CASE("channel trace csv")
{
    std::ostringstream out;
    write_channel_trace_csv_header(out);
    out << "\n";
    write_channel_trace_csv_row(out, ChannelTraceRow{0.02, 1, 2, true, 100.5, -1.25, -70.0});
    CHECK(out.str() == "t,ue,site,los,pl_db,sf_db,rsrp_dbm\n0.02,1,2,1,100.5,-1.25,-70");
}
