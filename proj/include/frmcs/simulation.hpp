#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "frmcs/config.hpp"
#include "frmcs/handover.hpp"
#include "frmcs/metrics.hpp"
#include "frmcs/traffic.hpp"

namespace frmcs
{

struct SweepPoint
{
    double a3_offset_db = 0.0;
    double ttt_ms = 0.0;

    bool operator==(const SweepPoint&) const = default;
};

struct ChannelTraceRow
{
    double t_s = 0.0;
    int ue = 0;
    int site = 0;
    bool los = false;
    double pathloss_db = 0.0;
    double shadow_db = 0.0;
    double rsrp_dbm = 0.0;
};

struct RealizationOptions
{
    bool keep_packets = false;
    /// Sampled once per L1 measurement period.
    bool keep_channel_trace = false;
};

struct RealizationResult
{
    SweepPoint point;
    std::uint64_t seed = 0;
    RealizationMetrics metrics;
    std::vector<HandoverRecord> handovers;
    std::vector<OutageInterval> outages;
    std::vector<PacketRecord> packets;
    std::vector<ChannelTraceRow> channel_trace;
};

/// One realization: fixed-step loop over positions, channel, L1/L3 filtering,
/// the A3 machine, handover execution and rate recording; then FIFO service
/// of the UL/DL FTP traffic of every train through its rate trace and
/// outages. Packets still queued at the horizon are drained at the final rate
/// and flagged. Throws std::logic_error if a bookkeeping invariant breaks.
RealizationResult run_realization(const ScenarioConfig& cfg, SweepPoint point, std::uint64_t seed,
                                  const RealizationOptions& options = {});

void write_channel_trace_csv_header(std::ostream& out);
void write_channel_trace_csv_row(std::ostream& out, const ChannelTraceRow& row);

}   // namespace frmcs
