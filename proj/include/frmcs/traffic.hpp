#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "frmcs/handover.hpp"
#include "frmcs/rng.hpp"

namespace frmcs
{

enum class Direction
{
    Uplink,
    Downlink
};

const char* to_string(Direction d);

struct PacketRecord
{
    int ue_id = 0;
    Direction direction = Direction::Downlink;
    double arrival_s = 0.0;
    double size_bits = 0.0;
    double departure_s = 0.0;
    /// Departed after the simulated horizon, during the end-of-run drain.
    bool flushed = false;

    double latency_s() const { return departure_s - arrival_s; }
};

/// Piecewise-constant service rate: rate(t) = bps[floor(t / step_s)] inside the
/// horizon and the last value beyond it.
struct RateTrace
{
    double step_s = 1e-3;
    std::vector<double> bps;

    double horizon_s() const { return step_s * static_cast<double>(bps.size()); }
};

/// Homogeneous Poisson arrivals on [0, duration).
std::vector<double> generate_arrivals(Rng& rng, double rate_pps, double duration_s);

/// FIFO fluid service. Each packet departs once `size_bits` of service,
/// integrated over the rate trace with the rate forced to zero inside
/// `outages`, has accumulated after every earlier packet departed.
///
/// Throws std::invalid_argument for unsorted arrivals or overlapping outages,
/// and std::runtime_error if a packet can never be served.
std::vector<PacketRecord> serve_queue(std::span<const double> arrivals, double size_bits, const RateTrace& rate,
                                      std::span<const OutageInterval> outages, int ue_id = 0,
                                      Direction direction = Direction::Downlink);

void write_packet_csv_header(std::ostream& out);
void write_packet_csv_row(std::ostream& out, const PacketRecord& p);

}   // namespace frmcs
