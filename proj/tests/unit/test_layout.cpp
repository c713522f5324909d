#include <doctest.h>

#include <random>

#include "frmcs/layout.hpp"

using namespace frmcs;

TEST_CASE("site count and positions")
{
    ScenarioConfig cfg;
    Layout l = build_layout(cfg);
    REQUIRE(l.n_sites() == 3);
    CHECK(l.sites[2].position.x() == 16000.0);
    CHECK(l.sites[1].position.y() == 100.0);
    CHECK(l.sites[0].height_m == 35.0);

    cfg.isd_m = 10000;
    CHECK(build_layout(cfg).n_sites() == 2);
    cfg.isd_m = 4000;
    CHECK(build_layout(cfg).n_sites() == 5);
}

TEST_CASE("train position")
{
    const ScenarioConfig cfg;
    const TrainTrajectory fwd = make_trajectory(cfg, 0, 0.0);
    CHECK(fwd.direction == 1);
    CHECK(train_position(fwd, 115.14).x() == doctest::Approx(1250.0 / 9.0 * 115.14).epsilon(1e-12));
    CHECK(train_position(fwd, 7.2).x() == doctest::Approx(1000.0));
    CHECK(train_position(fwd, 0.0).y() == 0.0);

    const TrainTrajectory back = make_trajectory(cfg, 1, 5000.0);
    CHECK(back.direction == -1);
    CHECK(train_position(back, 0.0).x() == 5000.0);
    CHECK(train_position(back, 7.2).x() == doctest::Approx(4000.0));
    // Wraps to the far end of the track.
    CHECK(train_position(back, 72.0).x() == doctest::Approx(16000.0 - 5000.0));

    CHECK_THROWS_AS(train_position(fwd, -0.001), std::out_of_range);
    CHECK_THROWS_AS(train_position(fwd, 115.2), std::out_of_range);
}

TEST_CASE("wrap")
{
    CHECK(wrap_position(16000.0, 16000.0) == 0.0);
    CHECK(wrap_position(-1.0, 16000.0) == 15999.0);
    CHECK(wrap_position(16001.0, 16000.0) == doctest::Approx(1.0));
}

TEST_CASE("property: a site is always within isd/2 along the track")
{
    const ScenarioConfig cfg;
    const Layout l = build_layout(cfg);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> start(0.0, cfg.track_length_m);
    std::uniform_real_distribution<double> time(0.0, cfg.sim_duration_s);
    for (int i = 0; i < 1000; ++i)
    {
        const TrainTrajectory tr = make_trajectory(cfg, i % 2, start(rng));
        const Vec2 p = train_position(tr, time(rng));
        REQUIRE(p.x() >= 0.0);
        REQUIRE(p.x() < cfg.track_length_m);
        double best = 1e18;
        for (const Site& s : l.sites)
        {
            best = std::min(best, (s.position - p).norm());
        }
        CHECK(best <= std::hypot(cfg.isd_m / 2, cfg.rail_offset_m) + 1e-9);
    }
}

TEST_CASE("property: opposite directions mirror each other")
{
    const ScenarioConfig cfg;
    for (double t : {0.0, 1.0, 30.0, 100.0})
    {
        const double a = train_position(make_trajectory(cfg, 0, 3000.0), t).x();
        const double b = train_position(make_trajectory(cfg, 1, 16000.0 - 3000.0), t).x();
        const double w = wrap_position(a + b, cfg.track_length_m);
        CHECK(std::min(w, cfg.track_length_m - w) < 1e-6);
    }
}
