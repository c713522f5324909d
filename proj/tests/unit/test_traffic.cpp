#include <doctest.h>

#include <random>
#include <sstream>

#include "../oracles.hpp"
#include "frmcs/traffic.hpp"

using namespace frmcs;

namespace
{
RateTrace constant(double bps, double horizon_s, double step = 1e-3)
{
    return RateTrace{step, std::vector<double>(static_cast<std::size_t>(std::llround(horizon_s / step)), bps)};
}
}   // namespace

TEST_CASE("poisson arrivals")
{
    double total = 0.0;
    double gap_sum = 0.0;
    std::size_t gaps = 0;
    for (std::uint64_t s = 0; s < 1000; ++s)
    {
        Rng rng = make_rng(s, Stream::Traffic);
        const auto a = generate_arrivals(rng, 2.5, 115.14);
        total += static_cast<double>(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            REQUIRE(a[i] >= 0.0);
            REQUIRE(a[i] < 115.14);
            if (i > 0)
            {
                REQUIRE(a[i] >= a[i - 1]);
                gap_sum += a[i] - a[i - 1];
                ++gaps;
            }
        }
    }
    CHECK(total / 1000.0 == doctest::Approx(287.85).epsilon(0.02));
    CHECK(gap_sum / gaps == doctest::Approx(0.4).epsilon(0.02));

    Rng rng = make_rng(0, Stream::Traffic);
    CHECK(generate_arrivals(rng, 0.0, 100.0).empty());
    CHECK_THROWS_AS(generate_arrivals(rng, -1.0, 100.0), std::invalid_argument);
}

TEST_CASE("serve_queue examples")
{
    const RateTrace r = constant(2e6, 10.0);
    const std::vector<double> one{0.0};
    auto p = serve_queue(one, 1e6, r, {});
    REQUIRE(p.size() == 1);
    CHECK(p[0].departure_s == doctest::Approx(0.5));
    CHECK(!p[0].flushed);

    const std::vector<OutageInterval> gap{{0, 0.2, 0.3}};
    p = serve_queue(one, 1e6, r, gap);
    CHECK(p[0].departure_s == doctest::Approx(0.6));

    const std::vector<double> two{0.0, 0.0};
    p = serve_queue(two, 1e6, r, {});
    REQUIRE(p.size() == 2);
    CHECK(p[0].latency_s() == doctest::Approx(0.5));
    CHECK(p[1].latency_s() == doctest::Approx(1.0));

    // Rate changes mid-packet: 0.25 s at 2 Mb/s then 1 Mb/s for the rest.
    RateTrace steps = constant(2e6, 10.0);
    for (std::size_t k = 250; k < steps.bps.size(); ++k)
    {
        steps.bps[k] = 1e6;
    }
    p = serve_queue(one, 1e6, steps, {});
    CHECK(p[0].departure_s == doctest::Approx(0.75));
}

TEST_CASE("serve_queue drains past the horizon")
{
    const RateTrace r = constant(1e6, 1.0);
    const std::vector<double> a{0.9};
    const auto p = serve_queue(a, 1e6, r, {});
    CHECK(p[0].departure_s == doctest::Approx(1.9));
    CHECK(p[0].flushed);

    RateTrace dead = constant(1e6, 1.0);
    dead.bps.back() = 0.0;
    CHECK_THROWS_AS(serve_queue(a, 1e6, dead, {}), std::runtime_error);
}

TEST_CASE("serve_queue argument errors")
{
    const RateTrace r = constant(1e6, 1.0);
    const std::vector<double> unsorted{0.5, 0.1};
    CHECK_THROWS_AS(serve_queue(unsorted, 1e3, r, {}), std::invalid_argument);
    const std::vector<double> a{0.1};
    const std::vector<OutageInterval> overlap{{0, 0.1, 0.3}, {0, 0.2, 0.4}};
    CHECK_THROWS_AS(serve_queue(a, 1e3, r, overlap), std::invalid_argument);
    CHECK_THROWS_AS(serve_queue(a, 1e3, RateTrace{1e-3, {}}, {}), std::invalid_argument);
}

TEST_CASE("property: constant rate matches the Lindley recursion")
{
    std::mt19937_64 seed_rng(4);
    for (int trial = 0; trial < 50; ++trial)
    {
        Rng rng = make_rng(seed_rng(), Stream::Traffic);
        const auto a = generate_arrivals(rng, 2.5, 100.0);
        const double rate = 5e6 + 1e6 * (trial % 7);
        const auto p = serve_queue(a, 4e6, constant(rate, 100.0), {});
        const auto ref = oracle::fifo_departures(a, 4e6, rate);
        REQUIRE(p.size() == ref.size());
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            CHECK(p[i].departure_s == doctest::Approx(ref[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: FIFO order, positive latency, outages only delay")
{
    Rng rng = make_rng(99, Stream::Traffic);
    const auto a = generate_arrivals(rng, 2.5, 60.0);
    std::uniform_real_distribution<double> u(2e6, 3e7);
    RateTrace r = constant(0.0, 60.0);
    for (double& x : r.bps)
    {
        x = u(rng);
    }
    std::vector<OutageInterval> outs;
    for (double t = 1.0; t < 60.0; t += 3.7)
    {
        outs.push_back({0, t, t + 0.047});
    }
    const auto clean = serve_queue(a, 4e6, r, {});
    const auto hit = serve_queue(a, 4e6, r, outs);
    REQUIRE(clean.size() == a.size());
    for (std::size_t i = 0; i < hit.size(); ++i)
    {
        CHECK(hit[i].latency_s() > 0.0);
        CHECK(hit[i].departure_s >= clean[i].departure_s - 1e-12);
        if (i > 0)
        {
            CHECK(hit[i].departure_s >= hit[i - 1].departure_s);
        }
    }
}

TEST_CASE("packet csv")
{
    std::ostringstream out;
    write_packet_csv_header(out);
    out << "\n";
    write_packet_csv_row(out, PacketRecord{1, Direction::Uplink, 0.5, 4e6, 0.75, false});
    CHECK(out.str().rfind("ue,dir,arrival_s,latency_ms,flushed\n1,UL,0.5,", 0) == 0);
    CHECK(std::string(to_string(Direction::Downlink)) == "DL");
}
