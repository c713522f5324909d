#pragma once

#include <vector>

#include <Eigen/Core>

#include "frmcs/config.hpp"

namespace frmcs
{

using Vec2 = Eigen::Vector2d;

struct Site
{
    int site_id = 0;
    Vec2 position = Vec2::Zero();
    double height_m = 0.0;
};

/// gNodeB sites along a straight track from (0, 0) to (track_length_m, 0).
struct Layout
{
    std::vector<Site> sites;
    double track_length_m = 0.0;

    int n_sites() const { return static_cast<int>(sites.size()); }
};

struct TrainTrajectory
{
    int train_id = 0;
    int direction = +1;
    double start_offset_m = 0.0;
    double speed_mps = 0.0;
    double antenna_height_m = 0.0;
    double track_length_m = 0.0;
    double duration_s = 0.0;
};

/// floor(track/isd) + 1 sites spaced isd apart, laterally offset from the rail.
Layout build_layout(const ScenarioConfig& cfg);

/// Wraps x into [0, length).
double wrap_position(double x, double length);

/// Throws std::out_of_range for t outside [0, duration].
Vec2 train_position(const TrainTrajectory& traj, double t);

/// Train i runs in direction +1 for even i and -1 for odd i.
TrainTrajectory make_trajectory(const ScenarioConfig& cfg, int train_id, double start_offset_m);

}   // namespace frmcs
