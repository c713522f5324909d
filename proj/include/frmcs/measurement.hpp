#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "frmcs/config.hpp"

namespace frmcs
{

struct L3FilterState
{
    double value_dbm = 0.0;
    bool initialized = false;
};

/// Filter weight a = 1 / 2^(k/4).
double l3_filter_weight(int k);

/// F <- (1 - a) F + a M; the first sample initializes F = M.
double l3_filter_update(L3FilterState& state, double sample_dbm, int k);

/// Mn - Mp > O + H, with all cell and frequency offsets zero.
bool a3_entering(double m_n_dbm, double m_p_dbm, const A3Config& cfg);

/// Mn - Mp < O - H.
bool a3_leaving(double m_n_dbm, double m_p_dbm, const A3Config& cfg);

enum class A3Phase
{
    Idle,
    EnteredCounting,
    Reported
};

struct A3EventState
{
    A3Phase phase = A3Phase::Idle;
    double entry_time_s = 0.0;
    double ttt_deadline_s = 0.0;
    int candidate_cell_id = -1;
    double last_t_s = -std::numeric_limits<double>::infinity();
};

struct MeasurementReport
{
    double t_s = 0.0;
    int ue_id = 0;
    int serving_cell_id = 0;
    int target_cell_id = 0;
    double m_p_dbm = 0.0;
    double m_n_dbm = 0.0;
};

/// A3 entering/leaving state machine with time-to-trigger for one UE.
///
/// Idle enters counting when the strongest neighbour (ties to the lowest
/// cell id) satisfies the entering condition. While counting, the leaving
/// condition on the candidate aborts the episode; reaching the deadline emits
/// one report. A reported episode stays latched until the leaving condition
/// holds again or `reset()` is called after a handover.
class A3EventMachine
{
public:
    A3EventMachine(A3Config cfg, int ue_id) : m_cfg(cfg), m_ue_id(ue_id) {}

    /// Throws std::logic_error if `t_s` decreases between calls.
    std::optional<MeasurementReport> step(double t_s, const Eigen::ArrayXd& filtered_dbm, int serving_cell);

    void reset();

    const A3EventState& state() const { return m_state; }
    const A3Config& config() const { return m_cfg; }

private:
    A3Config m_cfg;
    int m_ue_id;
    A3EventState m_state;
};

/// Index of the strongest cell other than `serving`, or -1 if there is none.
int strongest_neighbor(const Eigen::ArrayXd& values, int serving);

struct TraceSample
{
    double t_ms = 0.0;
    double m_p_dbm = 0.0;
    double m_n_dbm = 0.0;
};

/// Reads `t_ms,m_p_dbm,m_n_dbm` rows; a header line and blank lines are skipped.
std::vector<TraceSample> read_a3_trace(std::istream& in);

/// Feeds a serving/neighbour trace through the event machine and returns the
/// report timestamps in ms. Trace values are taken as already L3 filtered.
std::vector<double> run_a3_trace(const std::vector<TraceSample>& trace, const A3Config& cfg);

void write_report_times(std::ostream& out, const std::vector<double>& times_ms);

}   // namespace frmcs
