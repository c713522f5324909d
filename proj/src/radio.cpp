#include "frmcs/radio.hpp"

#include <algorithm>
#include <stdexcept>

namespace frmcs
{

double los_probability(double d2d_m, const RmaConstants& rma)
{
    if (!(d2d_m >= 0.0))
    {
        throw std::invalid_argument("los_probability: negative distance");
    }
    if (d2d_m <= rma.los_always_radius_m)
    {
        return 1.0;
    }
    return std::exp(-(d2d_m - rma.los_always_radius_m) / rma.los_decay_m);
}

double pathloss_db(double d3d_m, bool los, const PathlossGeometry& g)
{
    const double d3d = std::max(d3d_m, g.min_distance_m);
    const double dh = g.h_bs_m - g.h_ut_m;
    const double d2d = std::sqrt(std::max(d3d * d3d - dh * dh, 0.0));
    const double fc_ghz = g.fc_hz / 1e9;
    const double d_bp = rma_breakpoint_distance(g.fc_hz, g.h_bs_m, g.h_ut_m);
    const double h = g.avg_building_height_m;

    double pl_los;
    if (d2d <= d_bp)
    {
        pl_los = rma_pl1(d3d, fc_ghz, h);
    }
    else
    {
        pl_los = rma_pl1(d_bp, fc_ghz, h) + 40.0 * std::log10(d3d / d_bp);
    }
    if (los)
    {
        return pl_los;
    }
    return std::max(pl_los, rma_nlos_prime(d3d, fc_ghz, g.h_bs_m, g.h_ut_m, h, g.street_width_m));
}

double shadow_sigma_db(bool los, double d2d_m, const PathlossGeometry& g, const RmaConstants& rma)
{
    if (!los)
    {
        return rma.sf_sigma_nlos_db;
    }
    return d2d_m <= rma_breakpoint_distance(g.fc_hz, g.h_bs_m, g.h_ut_m) ? rma.sf_sigma_los_db
                                                                          : rma.sf_sigma_los_far_db;
}

ShadowFadingProcess::ShadowFadingProcess(Rng rng, double corr_los_m, double corr_nlos_m)
    : m_rng(std::move(rng)), m_corr_los_m(corr_los_m), m_corr_nlos_m(corr_nlos_m)
{
}

void ShadowFadingProcess::advance(double travelled_m)
{
    if (!m_started)
    {
        m_z_los = m_normal(m_rng);
        m_z_nlos = m_normal(m_rng);
        m_last_m = travelled_m;
        m_started = true;
        return;
    }
    const double dd = travelled_m - m_last_m;
    if (dd <= 0.0)
    {
        return;
    }
    const double rho_los = std::exp(-dd / m_corr_los_m);
    const double rho_nlos = std::exp(-dd / m_corr_nlos_m);
    m_z_los = rho_los * m_z_los + std::sqrt(1.0 - rho_los * rho_los) * m_normal(m_rng);
    m_z_nlos = rho_nlos * m_z_nlos + std::sqrt(1.0 - rho_nlos * rho_nlos) * m_normal(m_rng);
    m_last_m = travelled_m;
}

double ShadowFadingProcess::sample(double travelled_m, bool los, double sigma_db)
{
    advance(travelled_m);
    return sigma_db * (los ? m_z_los : m_z_nlos);
}

LosProcess::LosProcess(Rng rng, double persistence_m, bool stochastic, RmaConstants rma)
    : m_rng(std::move(rng)), m_persistence_m(persistence_m), m_stochastic(stochastic), m_rma(rma)
{
}

bool LosProcess::state(double travelled_m, double d2d_m)
{
    const double p = los_probability(d2d_m, m_rma);
    if (!m_stochastic)
    {
        return p >= 0.5;
    }
    if (travelled_m >= m_next_draw_m)
    {
        m_los = m_uniform(m_rng) < p;
        while (m_next_draw_m <= travelled_m)
        {
            m_next_draw_m += m_persistence_m;
        }
    }
    return m_los;
}

double eirp_per_subcarrier_dbm(double eirp_dbm, int n_subcarriers)
{
    return eirp_dbm - linear_to_db(static_cast<double>(n_subcarriers));
}

double noise_per_subcarrier_dbm(double subcarrier_spacing_hz, double noise_figure_db)
{
    return kThermalNoiseDbmPerHz + linear_to_db(subcarrier_spacing_hz) + noise_figure_db;
}

double sinr_db(const Eigen::ArrayXd& rsrp_dbm, int serving, double noise_dbm, InterferenceMode mode)
{
    double denom_mw = std::isinf(noise_dbm) && noise_dbm < 0 ? 0.0 : db_to_linear(noise_dbm);
    if (mode == InterferenceMode::FullBufferNeighbors)
    {
        const Eigen::ArrayXd lin = Eigen::pow(10.0, rsrp_dbm / 10.0);
        denom_mw += lin.sum() - lin(serving);
    }
    if (denom_mw <= 0.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return rsrp_dbm(serving) - linear_to_db(denom_mw);
}

double link_rate_bps(double sinr, double bandwidth_hz, double max_spectral_efficiency, int spatial_layers)
{
    if (std::isinf(sinr) && sinr < 0)
    {
        return 0.0;
    }
    const double se = std::isinf(sinr) ? max_spectral_efficiency
                                       : spatial_layers * std::log2(1.0 + db_to_linear(sinr));
    return bandwidth_hz * std::min(se, max_spectral_efficiency);
}

ChannelModel::ChannelModel(const ScenarioConfig& cfg, const Layout& layout, std::uint64_t seed, int ue_id)
    : m_sites(layout.sites),
      m_rma(cfg.radio.rma),
      m_shadowing(cfg.radio.shadowing_enabled),
      m_eirp_sc_dbm(eirp_per_subcarrier_dbm(cfg.eirp_dbm, cfg.radio.n_subcarriers)),
      m_noise_dbm(noise_per_subcarrier_dbm(cfg.subcarrier_spacing_hz, cfg.ue_noise_figure_db))
{
    m_geometry.fc_hz = cfg.carrier_frequency_hz;
    m_geometry.h_bs_m = cfg.gnb_height_m;
    m_geometry.h_ut_m = cfg.ue_height_m;
    m_geometry.avg_building_height_m = cfg.radio.avg_building_height_m;
    m_geometry.street_width_m = cfg.radio.street_width_m;
    m_geometry.min_distance_m = cfg.radio.rma.min_distance_m;

    const auto ue = static_cast<std::uint64_t>(ue_id);
    for (const Site& s : m_sites)
    {
        const auto site = static_cast<std::uint64_t>(s.site_id);
        m_los.emplace_back(make_rng(seed, Stream::Los, {ue, site}), cfg.radio.los_persistence_distance_m,
                           cfg.radio.stochastic_los, m_rma);
        m_shadow.emplace_back(make_rng(seed, Stream::Shadow, {ue, site}), m_rma.sf_correlation_los_m,
                              m_rma.sf_correlation_nlos_m);
    }
}

LinkSnapshot ChannelModel::evaluate(const Vec2& ue_position, double travelled_m)
{
    const Eigen::Index n = static_cast<Eigen::Index>(m_sites.size());
    LinkSnapshot snap;
    snap.d2d_m.resize(n);
    snap.pathloss_db.resize(n);
    snap.shadow_db.resize(n);
    snap.los.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const Site& s = m_sites[static_cast<std::size_t>(i)];
        const double d2d = (s.position - ue_position).norm();
        const double dh = s.height_m - m_geometry.h_ut_m;
        const double d3d = std::sqrt(d2d * d2d + dh * dh);
        const bool los = m_los[static_cast<std::size_t>(i)].state(travelled_m, d2d);
        snap.d2d_m(i) = d2d;
        snap.los(i) = los;
        snap.pathloss_db(i) = pathloss_db(d3d, los, m_geometry);
        snap.shadow_db(i) =
            m_shadowing ? m_shadow[static_cast<std::size_t>(i)].sample(
                              travelled_m, los, shadow_sigma_db(los, d2d, m_geometry, m_rma))
                        : 0.0;
    }
    snap.rsrp_dbm = measure_rsrp(m_eirp_sc_dbm, snap.pathloss_db + snap.shadow_db);
    return snap;
}

}   // namespace frmcs
