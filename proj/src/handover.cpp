#include "frmcs/handover.hpp"

#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace frmcs
{

DHandover sample_d_handover(Rng& rng, const HandoverTimingConfig& timing)
{
    // uniform_real_distribution draws [a, b); map to (0, max] by reflection.
    std::uniform_real_distribution<double> u(0.0, timing.t_iu_max_ms());
    DHandover d;
    d.t_processing_ms = timing.t_processing_ms;
    d.t_margin_ms = timing.t_margin_ms;
    d.t_delta_ms = timing.t_delta_ms;
    d.t_iu_ms = timing.t_iu_max_ms() - u(rng);
    return d;
}

std::pair<HandoverRecord, OutageInterval> execute_handover(const MeasurementReport& report,
                                                           const HandoverTimingConfig& timing, Rng& rng)
{
    return execute_handover(report, timing, sample_d_handover(rng, timing));
}

std::pair<HandoverRecord, OutageInterval> execute_handover(const MeasurementReport& report,
                                                           const HandoverTimingConfig& timing, const DHandover& d)
{
    HandoverRecord r;
    r.ue_id = report.ue_id;
    r.source_cell = report.serving_cell_id;
    r.target_cell = report.target_cell_id;
    r.t_report = report.t_s;
    r.t_command = r.t_report + timing.prep_delay_ms / 1000.0;
    r.t_detach = r.t_command + timing.t_rrc_ms / 1000.0;
    r.t_rach_start = r.t_detach + d.detach_to_rach_ms() / 1000.0;
    r.t_complete = r.t_rach_start + timing.rach_duration_ms / 1000.0;
    r.t_iu_ms = d.t_iu_ms;
    return {r, OutageInterval{r.ue_id, r.t_detach, r.t_complete}};
}

bool classify_pingpong(std::span<const HandoverRecord> history, const HandoverRecord& next, double window_s)
{
    for (auto it = history.rbegin(); it != history.rend(); ++it)
    {
        if (it->ue_id != next.ue_id)
        {
            continue;
        }
        return next.target_cell == it->source_cell && next.t_complete - it->t_complete < window_s;
    }
    return false;
}

HandoverEngine::HandoverEngine(int ue_id, int initial_cell, HandoverTimingConfig timing, Rng rng)
    : m_ue_id(ue_id), m_serving(initial_cell), m_timing(timing), m_rng(std::move(rng))
{
}

int HandoverEngine::serving_cell(double t_s) const
{
    if (m_pending && t_s >= m_records[*m_pending].t_detach)
    {
        return -1;
    }
    return m_serving;
}

int HandoverEngine::data_cell() const { return m_pending ? m_records[*m_pending].target_cell : m_serving; }

const HandoverRecord& HandoverEngine::start(const MeasurementReport& report)
{
    if (m_pending)
    {
        throw std::logic_error("HandoverEngine: overlapping handover attempt");
    }
    if (report.serving_cell_id != m_serving || report.ue_id != m_ue_id)
    {
        throw std::logic_error("HandoverEngine: report does not match the UE's serving cell");
    }
    auto [record, outage] = execute_handover(report, m_timing, m_rng);
    m_records.push_back(record);
    m_outages.push_back(outage);
    m_pending = m_records.size() - 1;
    return m_records.back();
}

bool HandoverEngine::complete_if_due(double t_s)
{
    if (!m_pending)
    {
        return false;
    }
    HandoverRecord& r = m_records[*m_pending];
    if (t_s < r.t_complete)
    {
        return false;
    }
    r.is_pingpong = classify_pingpong(std::span(m_records.data(), *m_pending), r, m_timing.pingpong_window_s);
    m_serving = r.target_cell;
    m_pending.reset();
    return true;
}

void write_handover_csv_header(std::ostream& out)
{
    out << "ue,source,target,t_report,t_detach,t_complete,t_iu_ms,pingpong";
}

void write_handover_csv_row(std::ostream& out, const HandoverRecord& r)
{
    out << fmt::format("{},{},{},{},{},{},{},{}", r.ue_id, r.source_cell, r.target_cell, r.t_report,
                       r.t_detach, r.t_complete, r.t_iu_ms, r.is_pingpong ? 1 : 0);
}

}   // namespace frmcs
