#include "frmcs/layout.hpp"

#include <cmath>
#include <stdexcept>

namespace frmcs
{

Layout build_layout(const ScenarioConfig& cfg)
{
    Layout layout;
    layout.track_length_m = cfg.track_length_m;
    // Small slack so 16000 / 8000 does not lose a site to rounding.
    const int n = static_cast<int>(std::floor(cfg.track_length_m / cfg.isd_m + 1e-9)) + 1;
    layout.sites.reserve(n);
    for (int i = 0; i < n; ++i)
    {
        layout.sites.push_back(Site{i, Vec2(i * cfg.isd_m, cfg.rail_offset_m), cfg.gnb_height_m});
    }
    return layout;
}

double wrap_position(double x, double length)
{
    double w = std::fmod(x, length);
    if (w < 0.0)
    {
        w += length;
    }
    return w >= length ? 0.0 : w;
}

Vec2 train_position(const TrainTrajectory& traj, double t)
{
    if (!(t >= 0.0 && t <= traj.duration_s))
    {
        throw std::out_of_range("train_position: t outside [0, duration]");
    }
    const double x = traj.start_offset_m + traj.direction * traj.speed_mps * t;
    return Vec2(wrap_position(x, traj.track_length_m), 0.0);
}

TrainTrajectory make_trajectory(const ScenarioConfig& cfg, int train_id, double start_offset_m)
{
    TrainTrajectory traj;
    traj.train_id = train_id;
    traj.direction = (train_id % 2 == 0) ? +1 : -1;
    traj.start_offset_m = start_offset_m;
    traj.speed_mps = cfg.train_speed_mps;
    traj.antenna_height_m = cfg.ue_height_m;
    traj.track_length_m = cfg.track_length_m;
    traj.duration_s = cfg.sim_duration_s;
    return traj;
}

}   // namespace frmcs
