#include "frmcs/measurement.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace frmcs
{
namespace
{
// Deadlines are sums of step-sized doubles.
constexpr double kTimeEps = 1e-9;
}

double l3_filter_weight(int k) { return 1.0 / std::pow(2.0, k / 4.0); }

double l3_filter_update(L3FilterState& state, double sample_dbm, int k)
{
    if (!state.initialized)
    {
        state.value_dbm = sample_dbm;
        state.initialized = true;
        return state.value_dbm;
    }
    const double a = l3_filter_weight(k);
    state.value_dbm = (1.0 - a) * state.value_dbm + a * sample_dbm;
    return state.value_dbm;
}

bool a3_entering(double m_n_dbm, double m_p_dbm, const A3Config& cfg)
{
    return m_n_dbm - m_p_dbm > cfg.offset_db + cfg.hysteresis_db;
}

bool a3_leaving(double m_n_dbm, double m_p_dbm, const A3Config& cfg)
{
    return m_n_dbm - m_p_dbm < cfg.offset_db - cfg.hysteresis_db;
}

int strongest_neighbor(const Eigen::ArrayXd& values, int serving)
{
    int best = -1;
    for (Eigen::Index i = 0; i < values.size(); ++i)
    {
        if (i == serving)
        {
            continue;
        }
        if (best < 0 || values(i) > values(best))
        {
            best = static_cast<int>(i);
        }
    }
    return best;
}

std::optional<MeasurementReport> A3EventMachine::step(double t_s, const Eigen::ArrayXd& filtered_dbm,
                                                      int serving_cell)
{
    if (t_s < m_state.last_t_s)
    {
        throw std::logic_error("A3EventMachine: non-monotone time");
    }
    m_state.last_t_s = t_s;
    const double m_p = filtered_dbm(serving_cell);

    if (m_state.phase == A3Phase::Reported)
    {
        if (!a3_leaving(filtered_dbm(m_state.candidate_cell_id), m_p, m_cfg))
        {
            return std::nullopt;
        }
        m_state.phase = A3Phase::Idle;
    }
    else if (m_state.phase == A3Phase::EnteredCounting)
    {
        const double m_n = filtered_dbm(m_state.candidate_cell_id);
        if (a3_leaving(m_n, m_p, m_cfg))
        {
            m_state.phase = A3Phase::Idle;
        }
        else if (t_s + kTimeEps >= m_state.ttt_deadline_s)
        {
            m_state.phase = A3Phase::Reported;
            return MeasurementReport{t_s, m_ue_id, serving_cell, m_state.candidate_cell_id, m_p, m_n};
        }
        else
        {
            return std::nullopt;
        }
    }

    // Idle, possibly just after the previous candidate left.
    const int best = strongest_neighbor(filtered_dbm, serving_cell);
    if (best >= 0 && a3_entering(filtered_dbm(best), m_p, m_cfg))
    {
        m_state.phase = A3Phase::EnteredCounting;
        m_state.candidate_cell_id = best;
        m_state.entry_time_s = t_s;
        m_state.ttt_deadline_s = t_s + m_cfg.ttt_ms / 1000.0;
    }
    return std::nullopt;
}

void A3EventMachine::reset()
{
    const double last = m_state.last_t_s;
    m_state = A3EventState{};
    m_state.last_t_s = last;
}

std::vector<TraceSample> read_a3_trace(std::istream& in)
{
    std::vector<TraceSample> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        if (line_no == 1 && line.find_first_of("0123456789-") != 0)
        {
            continue;   // header
        }
        std::istringstream ss(line);
        TraceSample s;
        char c1 = 0, c2 = 0;
        if (!(ss >> s.t_ms >> c1 >> s.m_p_dbm >> c2 >> s.m_n_dbm) || c1 != ',' || c2 != ',')
        {
            throw std::runtime_error(fmt::format("a3 trace: malformed line {}: '{}'", line_no, line));
        }
        out.push_back(s);
    }
    return out;
}

std::vector<double> run_a3_trace(const std::vector<TraceSample>& trace, const A3Config& cfg)
{
    A3EventMachine fsm(cfg, 0);
    std::vector<double> reports;
    Eigen::ArrayXd filtered(2);
    for (const TraceSample& s : trace)
    {
        filtered << s.m_p_dbm, s.m_n_dbm;
        if (auto r = fsm.step(s.t_ms / 1000.0, filtered, 0))
        {
            reports.push_back(s.t_ms);
        }
    }
    return reports;
}

void write_report_times(std::ostream& out, const std::vector<double>& times_ms)
{
    out << "report_t_ms\n";
    for (double t : times_ms)
    {
        out << fmt::format("{}\n", t);
    }
}

}   // namespace frmcs
