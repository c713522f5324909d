#include "frmcs/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace frmcs
{

const char* to_string(Direction d) { return d == Direction::Uplink ? "UL" : "DL"; }

std::vector<double> generate_arrivals(Rng& rng, double rate_pps, double duration_s)
{
    if (rate_pps < 0.0)
    {
        throw std::invalid_argument("generate_arrivals: negative rate");
    }
    std::vector<double> out;
    if (rate_pps == 0.0)
    {
        return out;
    }
    std::exponential_distribution<double> gap(rate_pps);
    for (double t = gap(rng); t < duration_s; t += gap(rng))
    {
        out.push_back(t);
    }
    return out;
}

std::vector<PacketRecord> serve_queue(std::span<const double> arrivals, double size_bits, const RateTrace& rate,
                                      std::span<const OutageInterval> outages, int ue_id, Direction direction)
{
    if (rate.bps.empty() || !(rate.step_s > 0.0))
    {
        throw std::invalid_argument("serve_queue: empty rate trace");
    }
    if (!std::is_sorted(arrivals.begin(), arrivals.end()))
    {
        throw std::invalid_argument("serve_queue: arrivals not sorted");
    }
    for (std::size_t i = 0; i < outages.size(); ++i)
    {
        if (!(outages[i].end_s >= outages[i].start_s))
        {
            throw std::invalid_argument("serve_queue: outage ends before it starts");
        }
        if (i > 0 && outages[i].start_s < outages[i - 1].end_s)
        {
            throw std::invalid_argument("serve_queue: overlapping or unsorted outages");
        }
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    const double horizon = rate.horizon_s();
    const std::size_t n_steps = rate.bps.size();

    std::vector<PacketRecord> out;
    out.reserve(arrivals.size());
    double server_free = 0.0;
    std::size_t oi = 0;

    for (double arrival : arrivals)
    {
        double t = std::max(server_free, arrival);
        double remaining = size_bits;
        double departure = inf;
        while (true)
        {
            while (oi < outages.size() && outages[oi].end_s <= t)
            {
                ++oi;
            }
            if (oi < outages.size() && outages[oi].start_s <= t)
            {
                t = outages[oi].end_s;
                continue;
            }
            const double next_outage = oi < outages.size() ? outages[oi].start_s : inf;

            double r;
            double seg_end;
            if (t < horizon)
            {
                auto k = static_cast<std::size_t>(std::floor(t / rate.step_s));
                if (static_cast<double>(k + 1) * rate.step_s <= t)
                {
                    ++k;
                }
                k = std::min(k, n_steps - 1);
                r = rate.bps[k];
                seg_end = std::min(k + 1 == n_steps ? horizon : static_cast<double>(k + 1) * rate.step_s,
                                   next_outage);
            }
            else
            {
                r = rate.bps.back();
                seg_end = next_outage;
            }

            if (r > 0.0)
            {
                const double capacity = r * (seg_end - t);
                if (capacity >= remaining)
                {
                    departure = t + remaining / r;
                    break;
                }
                remaining -= capacity;
            }
            else if (seg_end == inf)
            {
                throw std::runtime_error("serve_queue: zero rate after the horizon, queue never drains");
            }
            t = seg_end;
        }
        server_free = departure;
        out.push_back(PacketRecord{ue_id, direction, arrival, size_bits, departure, departure > horizon});
    }
    return out;
}

void write_packet_csv_header(std::ostream& out) { out << "ue,dir,arrival_s,latency_ms,flushed"; }

void write_packet_csv_row(std::ostream& out, const PacketRecord& p)
{
    out << fmt::format("{},{},{},{},{}", p.ue_id, to_string(p.direction), p.arrival_s, p.latency_s() * 1000.0,
                       p.flushed ? 1 : 0);
}

}   // namespace frmcs
