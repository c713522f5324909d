#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "frmcs/config.hpp"
#include "frmcs/measurement.hpp"
#include "frmcs/rng.hpp"

namespace frmcs
{

/// Handover Command reception to first PRACH preamble.
struct DHandover
{
    double t_processing_ms = 0.0;
    double t_margin_ms = 0.0;
    double t_delta_ms = 0.0;
    double t_iu_ms = 0.0;

    double fixed_ms() const { return t_processing_ms + t_margin_ms + t_delta_ms; }
    double detach_to_rach_ms() const { return fixed_ms() + t_iu_ms; }
};

struct HandoverRecord
{
    int ue_id = 0;
    int source_cell = 0;
    int target_cell = 0;
    double t_report = 0.0;
    double t_command = 0.0;
    double t_detach = 0.0;
    double t_rach_start = 0.0;
    double t_complete = 0.0;
    double t_iu_ms = 0.0;
    bool is_pingpong = false;
};

struct OutageInterval
{
    int ue_id = 0;
    double start_s = 0.0;
    double end_s = 0.0;

    double duration_s() const { return end_s - start_s; }
};

/// T_IU is uniform on (0, association_period + 10] ms.
DHandover sample_d_handover(Rng& rng, const HandoverTimingConfig& timing);

/// Lays out the baseline sequence after a measurement report:
/// report -> (prep) -> command -> (T_RRC) -> detach -> (D_handover) -> RACH
/// -> (rach_duration) -> complete. The outage is [detach, complete].
std::pair<HandoverRecord, OutageInterval> execute_handover(const MeasurementReport& report,
                                                           const HandoverTimingConfig& timing, Rng& rng);
std::pair<HandoverRecord, OutageInterval> execute_handover(const MeasurementReport& report,
                                                           const HandoverTimingConfig& timing, const DHandover& d);

/// True iff `next` returns to the source of this UE's most recent handover and
/// completes less than `window_s` after it. `history` is sorted by t_complete.
bool classify_pingpong(std::span<const HandoverRecord> history, const HandoverRecord& next,
                       double window_s = 1.0);

/// Per-UE serving-cell and handover bookkeeping used by the simulation loop.
class HandoverEngine
{
public:
    HandoverEngine(int ue_id, int initial_cell, HandoverTimingConfig timing, Rng rng);

    bool in_progress() const { return m_pending.has_value(); }
    /// Serving cell, or -1 inside the UE's own outage interval.
    int serving_cell(double t_s) const;
    /// Cell whose link carries data once connected; the target while detached.
    int data_cell() const;

    /// Throws std::logic_error if a handover is already in progress or the
    /// report does not come from the current serving cell.
    const HandoverRecord& start(const MeasurementReport& report);

    /// Completes a pending handover whose t_complete <= t_s. Returns true once.
    bool complete_if_due(double t_s);

    const std::vector<HandoverRecord>& records() const { return m_records; }
    const std::vector<OutageInterval>& outages() const { return m_outages; }

private:
    int m_ue_id;
    int m_serving;
    HandoverTimingConfig m_timing;
    Rng m_rng;
    std::optional<std::size_t> m_pending;
    std::vector<HandoverRecord> m_records;
    std::vector<OutageInterval> m_outages;
};

void write_handover_csv_header(std::ostream& out);
void write_handover_csv_row(std::ostream& out, const HandoverRecord& r);

}   // namespace frmcs
