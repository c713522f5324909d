#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "frmcs/config.hpp"
#include "frmcs/layout.hpp"
#include "frmcs/rng.hpp"

namespace frmcs
{

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kThermalNoiseDbmPerHz = -174.0;

template <typename Scalar>
Scalar db_to_linear(Scalar db)
{
    using std::pow;
    return pow(Scalar(10), db / Scalar(10));
}

template <typename Scalar>
Scalar linear_to_db(Scalar lin)
{
    using std::log10;
    return Scalar(10) * log10(lin);
}

/// RMa LOS probability, TR 38.901 Table 7.4.2-1. Throws on negative distance.
double los_probability(double d2d_m, const RmaConstants& rma = {});

/// Breakpoint distance d_BP = 2 pi h_BS h_UT f_c / c.
template <typename Scalar>
Scalar rma_breakpoint_distance(Scalar fc_hz, Scalar h_bs_m, Scalar h_ut_m)
{
    return Scalar(2) * Scalar(std::numbers::pi) * h_bs_m * h_ut_m * fc_hz / Scalar(kSpeedOfLight);
}

/// PL1 of the RMa LOS model (TR 38.901 Table 7.4.1-1).
template <typename Scalar>
Scalar rma_pl1(Scalar d3d_m, Scalar fc_ghz, Scalar h_m)
{
    using std::log10;
    using std::min;
    using std::pow;
    const Scalar h172 = pow(h_m, Scalar(1.72));
    return Scalar(20) * log10(Scalar(40) * Scalar(std::numbers::pi) * d3d_m * fc_ghz / Scalar(3)) +
           min(Scalar(0.03) * h172, Scalar(10)) * log10(d3d_m) - min(Scalar(0.044) * h172, Scalar(14.77)) +
           Scalar(0.002) * log10(h_m) * d3d_m;
}

/// NLOS' of the RMa model, before taking the max with the LOS value.
template <typename Scalar>
Scalar rma_nlos_prime(Scalar d3d_m, Scalar fc_ghz, Scalar h_bs_m, Scalar h_ut_m, Scalar h_m, Scalar w_m)
{
    using std::log10;
    const Scalar hr = h_m / h_bs_m;
    const Scalar lh = log10(Scalar(11.75) * h_ut_m);
    return Scalar(161.04) - Scalar(7.1) * log10(w_m) + Scalar(7.5) * log10(h_m) -
           (Scalar(24.37) - Scalar(3.7) * hr * hr) * log10(h_bs_m) +
           (Scalar(43.42) - Scalar(3.1) * log10(h_bs_m)) * (log10(d3d_m) - Scalar(3)) +
           Scalar(20) * log10(fc_ghz) - (Scalar(3.2) * lh * lh - Scalar(4.97));
}

struct PathlossGeometry
{
    double fc_hz = 900e6;
    double h_bs_m = 35.0;
    double h_ut_m = 4.0;
    double avg_building_height_m = 5.0;
    double street_width_m = 20.0;
    double min_distance_m = 10.0;
};

/// RMa pathloss in dB. Distances below `min_distance_m` are clamped to it;
/// callers that care can test `d3d_m < g.min_distance_m` themselves.
/// NLOS = max(LOS, NLOS').
double pathloss_db(double d3d_m, bool los, const PathlossGeometry& g);

/// Shadow fading standard deviation for the given state and 2D distance.
double shadow_sigma_db(bool los, double d2d_m, const PathlossGeometry& g, const RmaConstants& rma);

/// Zero-mean Gaussian shadowing along the UE's travelled distance with
/// exponential autocorrelation exp(-dd / d_corr). LOS and NLOS each keep their
/// own unit-variance AR(1) state so a state flip does not reset correlation.
class ShadowFadingProcess
{
public:
    ShadowFadingProcess(Rng rng, double corr_los_m, double corr_nlos_m);

    /// `travelled_m` must be non-decreasing across calls.
    double sample(double travelled_m, bool los, double sigma_db);

private:
    void advance(double travelled_m);

    Rng m_rng;
    std::normal_distribution<double> m_normal{0.0, 1.0};
    double m_corr_los_m;
    double m_corr_nlos_m;
    double m_last_m = 0.0;
    double m_z_los = 0.0;
    double m_z_nlos = 0.0;
    bool m_started = false;
};

/// LOS state redrawn from los_probability every `persistence_m` of travel and
/// held in between.
class LosProcess
{
public:
    LosProcess(Rng rng, double persistence_m, bool stochastic, RmaConstants rma);

    bool state(double travelled_m, double d2d_m);

private:
    Rng m_rng;
    std::uniform_real_distribution<double> m_uniform{0.0, 1.0};
    double m_persistence_m;
    bool m_stochastic;
    RmaConstants m_rma;
    double m_next_draw_m = 0.0;
    bool m_los = false;
};

/// Per-site large-scale state of one UE at one instant.
struct LinkSnapshot
{
    Eigen::ArrayXd d2d_m;
    Eigen::ArrayXd pathloss_db;
    Eigen::ArrayXd shadow_db;
    Eigen::ArrayXd rsrp_dbm;
    Eigen::Array<bool, Eigen::Dynamic, 1> los;
};

/// Per-resource-element EIRP: eirp - 10 log10(n_subcarriers).
double eirp_per_subcarrier_dbm(double eirp_dbm, int n_subcarriers);

/// Thermal noise in one subcarrier plus the UE noise figure.
double noise_per_subcarrier_dbm(double subcarrier_spacing_hz, double noise_figure_db);

/// rsrp = eirp_per_subcarrier - PL - SF, elementwise.
template <typename Derived>
Eigen::ArrayXd measure_rsrp(double eirp_per_subcarrier, const Eigen::ArrayBase<Derived>& pathloss_plus_shadow_db)
{
    return eirp_per_subcarrier - pathloss_plus_shadow_db.derived();
}

/// SINR of `serving` against noise and, in full-buffer mode, every other
/// site's RSRP. `noise_dbm` may be -inf.
double sinr_db(const Eigen::ArrayXd& rsrp_dbm, int serving, double noise_dbm, InterferenceMode mode);

/// B * min(layers * log2(1 + sinr), cap). Non-decreasing in SINR.
double link_rate_bps(double sinr_db, double bandwidth_hz, double max_spectral_efficiency, int spatial_layers = 1);

/// Channel of one UE towards every site of a layout, for one realization.
class ChannelModel
{
public:
    ChannelModel(const ScenarioConfig& cfg, const Layout& layout, std::uint64_t seed, int ue_id);

    /// `travelled_m` drives the spatial processes and must be non-decreasing.
    LinkSnapshot evaluate(const Vec2& ue_position, double travelled_m);

    double noise_dbm() const { return m_noise_dbm; }
    int n_sites() const { return static_cast<int>(m_sites.size()); }

private:
    std::vector<Site> m_sites;
    PathlossGeometry m_geometry;
    RmaConstants m_rma;
    bool m_shadowing;
    double m_eirp_sc_dbm;
    double m_noise_dbm;
    std::vector<LosProcess> m_los;
    std::vector<ShadowFadingProcess> m_shadow;
};

}   // namespace frmcs
