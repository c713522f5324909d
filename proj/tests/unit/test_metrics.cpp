#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "frmcs/metrics.hpp"

using namespace frmcs;

TEST_CASE("reliability")
{
    const std::vector<double> l{0.010, 0.020, 0.600};
    CHECK(reliability(l, 0.5) == doctest::Approx(66.6667).epsilon(1e-5));
    CHECK(reliability(l, 0.6) == 100.0);   // inclusive bound
    CHECK_THROWS_AS(reliability({}, 0.5), MetricsError);

    std::vector<double> big(1000000, 0.1);
    std::fill(big.begin(), big.begin() + 1000, 0.9);
    CHECK(reliability(big, 0.5) == 99.9);
    const auto r = evaluate_scenarios(big, frmcs_requirements());
    CHECK(r[3].name == "Standard Data Communication");
    CHECK(r[3].pass);
}

TEST_CASE("percentile")
{
    std::vector<double> v;
    for (int i = 1000; i >= 1; --i)
    {
        v.push_back(i);
    }
    CHECK(latency_percentile(v, 99.9) == 999.0);
    CHECK(latency_percentile(v, 100.0) == 1000.0);
    CHECK(latency_percentile(v, 50.0) == 500.0);
    CHECK(latency_percentile(v, 0.01) == 1.0);
    const std::vector<double> one{7.0};
    CHECK(latency_percentile(one, 99.9) == 7.0);
    CHECK_THROWS_AS(latency_percentile(v, 0.0), MetricsError);
    CHECK_THROWS_AS(latency_percentile(v, 100.5), MetricsError);
    CHECK_THROWS_AS(latency_percentile({}, 50.0), MetricsError);
}

TEST_CASE("property: percentile and reliability agree with the oracles")
{
    std::mt19937_64 rng(6);
    std::lognormal_distribution<double> lat(-2.0, 1.0);
    for (int trial = 0; trial < 300; ++trial)
    {
        std::vector<double> v(1 + rng() % 400);
        for (double& x : v)
        {
            x = lat(rng);
        }
        for (double p : {50.0, 90.0, 99.0, 99.9, 100.0})
        {
            CHECK(latency_percentile(v, p) == oracle::percentile(v, p));
        }
        CHECK(reliability(v, 0.1) == oracle::reliability(v, 0.1));
        // r(L) >= p/100 exactly at L = percentile(p).
        CHECK(reliability(v, latency_percentile(v, 99.0)) >= 99.0);
    }
}

TEST_CASE("normalized outage")
{
    CHECK(normalized_outage(0.1, 115.14, 2, 1) == doctest::Approx(0.0434254).epsilon(1e-6));
    CHECK(normalized_outage(0.0, 115.14, 2, 29) == 0.0);
    CHECK_THROWS_AS(normalized_outage(1.0, 0.0, 2, 1), MetricsError);
}

TEST_CASE("requirement table")
{
    const auto& rows = frmcs_requirements();
    REQUIRE(rows.size() == 7);
    CHECK(!rows.back().evaluable());
    CHECK(rows[0].load_bps == 300e3);
    CHECK(rows[4].reliability_target_pct == 99.9999);

    const std::vector<double> l{0.05, 0.2, 0.3};
    const auto res = evaluate_scenarios(l, rows, 10e6);
    REQUIRE(res.size() == 6);
    CHECK(res[0].load_mismatch);
    CHECK(!res[0].pass);
    CHECK(!res[1].load_mismatch);
    CHECK(res[1].reliability_pct == doctest::Approx(33.3333).epsilon(1e-5));
    CHECK(!res[1].pass);
    CHECK(res[3].reliability_pct == 100.0);
    CHECK(res[3].pass);
}

TEST_CASE("summaries pool packets across realizations")
{
    RealizationMetrics a;
    a.latencies_s = {0.05, 0.6};
    a.n_handovers = 3;
    a.n_pingpongs = 1;
    a.total_outage_s = 0.1;
    a.duration_s = 115.14;
    a.n_ues = 2;
    RealizationMetrics b = a;
    b.latencies_s = {0.2, 0.3};
    b.total_outage_s = 0.2;
    const std::vector<RealizationMetrics> runs{a, b};
    const PointSummary s = summarize_point(2.0, 80.0, runs);
    CHECK(s.n_packets == 4);
    CHECK(s.n_handovers == 6);
    CHECK(s.n_pingpongs == 2);
    CHECK(s.r_100ms == 25.0);
    CHECK(s.r_500ms == 75.0);
    CHECK(s.p999_latency_ms == doctest::Approx(600.0));
    CHECK(s.normalized_outage_pct == doctest::Approx(0.3 / (115.14 * 2 * 2) * 100));
    CHECK_THROWS_AS(summarize_point(2.0, 80.0, {}), MetricsError);
}
