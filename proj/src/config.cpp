#include "frmcs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace frmcs
{
namespace
{

/// Reads fields out of one JSON object and remembers which keys were consumed,
/// so leftovers can be reported as unknown.
class ObjectReader
{
public:
    ObjectReader(const json& j, std::string where)
        : m_j(j), m_where(std::move(where))
    {
        if (!m_j.is_object())
        {
            throw ConfigError(m_where + ": expected a JSON object");
        }
    }

    template <typename T>
    void get(const char* key, T& out)
    {
        m_seen.insert(key);
        auto it = m_j.find(key);
        if (it == m_j.end())
        {
            return;
        }
        try
        {
            out = it->template get<T>();
        }
        catch (const json::exception& e)
        {
            throw ConfigError(m_where + "." + key + ": " + e.what());
        }
    }

    const json* child(const char* key)
    {
        m_seen.insert(key);
        auto it = m_j.find(key);
        return it == m_j.end() ? nullptr : &*it;
    }

    void finish() const
    {
        for (const auto& [key, value] : m_j.items())
        {
            if (!m_seen.count(key))
            {
                throw ConfigError(m_where + ": unknown key '" + key + "'");
            }
        }
    }

    const std::string& where() const { return m_where; }

private:
    const json& m_j;
    std::string m_where;
    std::set<std::string> m_seen;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
    {
        throw ConfigError("validation error: " + what);
    }
}

void require_positive(double v, const char* name)
{
    require(std::isfinite(v) && v > 0.0, std::string(name) + " must be strictly positive");
}

void require_non_negative(double v, const char* name)
{
    require(std::isfinite(v) && v >= 0.0, std::string(name) + " must be non-negative");
}

std::string to_string(DuplexMode m) { return m == DuplexMode::Fdd ? "FDD" : "TDD"; }

DuplexMode parse_duplex(const std::string& s)
{
    if (s == "FDD")
    {
        return DuplexMode::Fdd;
    }
    if (s == "TDD")
    {
        return DuplexMode::Tdd;
    }
    throw ConfigError("duplex_mode: expected FDD or TDD, got '" + s + "'");
}

std::string to_string(InterferenceMode m)
{
    return m == InterferenceMode::NoiseOnly ? "noise_only" : "full_buffer_neighbors";
}

InterferenceMode parse_interference(const std::string& s)
{
    if (s == "noise_only")
    {
        return InterferenceMode::NoiseOnly;
    }
    if (s == "full_buffer_neighbors")
    {
        return InterferenceMode::FullBufferNeighbors;
    }
    throw ConfigError("radio.interference_mode: expected noise_only or full_buffer_neighbors, got '" +
                      s + "'");
}

RmaConstants read_rma(const json& j, const std::string& where)
{
    RmaConstants c;
    ObjectReader r(j, where);
    std::string source;   // free-text citation, ignored
    r.get("source", source);
    r.get("los_always_radius_m", c.los_always_radius_m);
    r.get("los_decay_m", c.los_decay_m);
    r.get("min_distance_m", c.min_distance_m);
    r.get("sf_sigma_los_db", c.sf_sigma_los_db);
    r.get("sf_sigma_los_far_db", c.sf_sigma_los_far_db);
    r.get("sf_sigma_nlos_db", c.sf_sigma_nlos_db);
    r.get("sf_correlation_los_m", c.sf_correlation_los_m);
    r.get("sf_correlation_nlos_m", c.sf_correlation_nlos_m);
    r.finish();
    return c;
}

json parse_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open " + path.string());
    }
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError("parse error in " + path.string() + ": " + e.what());
    }
}

}   // namespace

void validate(const ScenarioConfig& c)
{
    require_positive(c.carrier_frequency_hz, "carrier_frequency_hz");
    require_positive(c.bandwidth_hz, "bandwidth_hz");
    require_positive(c.subcarrier_spacing_hz, "subcarrier_spacing_hz");
    require_positive(c.isd_m, "isd_m");
    require_positive(c.track_length_m, "track_length_m");
    require_non_negative(c.rail_offset_m, "rail_offset_m");
    require_positive(c.train_speed_mps, "train_speed_mps");
    require_positive(c.sim_duration_s, "sim_duration_s");
    require_positive(c.step_s, "step_s");
    require_positive(c.gnb_height_m, "gnb_height_m");
    require_positive(c.ue_height_m, "ue_height_m");
    require(c.n_trains >= 1, "n_trains must be at least 1");
    require(c.n_realizations >= 1, "n_realizations must be at least 1");
    require(c.isd_m <= c.track_length_m, "isd_m must not exceed track_length_m");
    // 1e-9 relative slack: 115.14 s at 1250/9 m/s is 15991.67 m.
    require(c.sim_duration_s * c.train_speed_mps <= c.track_length_m * (1.0 + 1e-9),
            "sim_duration_s * train_speed_mps exceeds track_length_m");
    require(std::isfinite(c.eirp_dbm), "eirp_dbm must be finite");
    require(c.eirp_dbm <= 63.0, "EIRP exceeds 63 dBm cap");
    require(std::isfinite(c.ue_noise_figure_db), "ue_noise_figure_db must be finite");

    const auto& r = c.radio;
    require_positive(r.avg_building_height_m, "radio.avg_building_height_m");
    require_positive(r.street_width_m, "radio.street_width_m");
    require_non_negative(r.rma.sf_sigma_los_db, "radio.rma.sf_sigma_los_db");
    require_non_negative(r.rma.sf_sigma_los_far_db, "radio.rma.sf_sigma_los_far_db");
    require_non_negative(r.rma.sf_sigma_nlos_db, "radio.rma.sf_sigma_nlos_db");
    require_positive(r.rma.sf_correlation_los_m, "radio.rma.sf_correlation_los_m");
    require_positive(r.rma.sf_correlation_nlos_m, "radio.rma.sf_correlation_nlos_m");
    require_positive(r.rma.los_decay_m, "radio.rma.los_decay_m");
    require_non_negative(r.rma.los_always_radius_m, "radio.rma.los_always_radius_m");
    require_positive(r.rma.min_distance_m, "radio.rma.min_distance_m");
    require_positive(r.los_persistence_distance_m, "radio.los_persistence_distance_m");
    require_positive(r.max_spectral_efficiency_bps_hz, "radio.max_spectral_efficiency_bps_hz");
    require(r.spatial_layers >= 1, "radio.spatial_layers must be at least 1");
    require(r.n_subcarriers >= 1, "radio.n_subcarriers must be at least 1");

    const auto& m = c.measurement;
    require(std::isfinite(m.offset_db), "measurement.offset_db must be finite");
    require_non_negative(m.hysteresis_db, "measurement.hysteresis_db");
    require_positive(m.ttt_ms, "measurement.ttt_ms");
    require(m.l3_filter_k >= 0, "measurement.l3_filter_k must be non-negative");
    require_positive(m.l1_period_ms, "measurement.l1_period_ms");

    const auto& h = c.handover;
    require_non_negative(h.t_rrc_ms, "handover.t_rrc_ms");
    require_non_negative(h.t_processing_ms, "handover.t_processing_ms");
    require_non_negative(h.t_margin_ms, "handover.t_margin_ms");
    require_non_negative(h.t_delta_ms, "handover.t_delta_ms");
    require_non_negative(h.association_period_ms, "handover.association_period_ms");
    require_non_negative(h.prep_delay_ms, "handover.prep_delay_ms");
    require_non_negative(h.rach_duration_ms, "handover.rach_duration_ms");
    require_positive(h.pingpong_window_s, "handover.pingpong_window_s");

    const auto& t = c.traffic;
    require_positive(t.packet_size_bits, "traffic.packet_size_bits");
    require_non_negative(t.arrival_rate_pps, "traffic.arrival_rate_pps");
    require(t.uplink || t.downlink, "traffic: at least one direction must be enabled");

    require(!c.sweep.a3_offset_db.empty(), "sweep.a3_offset_db must not be empty");
    require(!c.sweep.ttt_ms.empty(), "sweep.ttt_ms must not be empty");
    for (double o : c.sweep.a3_offset_db)
    {
        require(std::isfinite(o), "sweep.a3_offset_db entries must be finite");
    }
    for (double t_ms : c.sweep.ttt_ms)
    {
        require_positive(t_ms, "sweep.ttt_ms entries");
    }
}

RmaConstants parse_rma_constants(const json& j) { return read_rma(j, "rma_constants"); }

RmaConstants load_rma_constants(const std::filesystem::path& path)
{
    return parse_rma_constants(parse_file(path));
}

json to_json(const RmaConstants& c)
{
    return json{{"los_always_radius_m", c.los_always_radius_m},
                {"los_decay_m", c.los_decay_m},
                {"min_distance_m", c.min_distance_m},
                {"sf_sigma_los_db", c.sf_sigma_los_db},
                {"sf_sigma_los_far_db", c.sf_sigma_los_far_db},
                {"sf_sigma_nlos_db", c.sf_sigma_nlos_db},
                {"sf_correlation_los_m", c.sf_correlation_los_m},
                {"sf_correlation_nlos_m", c.sf_correlation_nlos_m}};
}

ScenarioConfig parse_config(const json& j, const std::filesystem::path& base_dir)
{
    ScenarioConfig c;
    ObjectReader top(j, "config");
    top.get("carrier_frequency_hz", c.carrier_frequency_hz);
    top.get("bandwidth_hz", c.bandwidth_hz);
    top.get("subcarrier_spacing_hz", c.subcarrier_spacing_hz);
    std::string duplex = to_string(c.duplex_mode);
    top.get("duplex_mode", duplex);
    c.duplex_mode = parse_duplex(duplex);
    top.get("isd_m", c.isd_m);
    top.get("track_length_m", c.track_length_m);
    top.get("rail_offset_m", c.rail_offset_m);
    top.get("train_speed_mps", c.train_speed_mps);
    top.get("sim_duration_s", c.sim_duration_s);
    top.get("step_s", c.step_s);
    top.get("n_trains", c.n_trains);
    top.get("gnb_height_m", c.gnb_height_m);
    top.get("ue_height_m", c.ue_height_m);
    top.get("n_realizations", c.n_realizations);
    top.get("base_seed", c.base_seed);
    top.get("eirp_dbm", c.eirp_dbm);
    top.get("ue_noise_figure_db", c.ue_noise_figure_db);

    if (const json* rj = top.child("radio"))
    {
        auto& r = c.radio;
        ObjectReader rr(*rj, "radio");
        rr.get("avg_building_height_m", r.avg_building_height_m);
        rr.get("street_width_m", r.street_width_m);
        const json* inline_rma = rr.child("rma");
        std::string rma_file;
        rr.get("rma_constants_file", rma_file);
        if (inline_rma && !rma_file.empty())
        {
            throw ConfigError("radio: 'rma' and 'rma_constants_file' are mutually exclusive");
        }
        if (inline_rma)
        {
            r.rma = read_rma(*inline_rma, "radio.rma");
        }
        else if (!rma_file.empty())
        {
            std::filesystem::path p(rma_file);
            r.rma = load_rma_constants(p.is_relative() ? base_dir / p : p);
        }
        rr.get("los_persistence_distance_m", r.los_persistence_distance_m);
        rr.get("shadowing_enabled", r.shadowing_enabled);
        rr.get("stochastic_los", r.stochastic_los);
        std::string mode = to_string(r.interference_mode);
        rr.get("interference_mode", mode);
        r.interference_mode = parse_interference(mode);
        rr.get("max_spectral_efficiency_bps_hz", r.max_spectral_efficiency_bps_hz);
        rr.get("spatial_layers", r.spatial_layers);
        rr.get("n_subcarriers", r.n_subcarriers);
        rr.finish();
    }

    if (const json* mj = top.child("measurement"))
    {
        auto& m = c.measurement;
        ObjectReader mr(*mj, "measurement");
        mr.get("offset_db", m.offset_db);
        mr.get("hysteresis_db", m.hysteresis_db);
        mr.get("ttt_ms", m.ttt_ms);
        mr.get("l3_filter_k", m.l3_filter_k);
        mr.get("l1_period_ms", m.l1_period_ms);
        mr.finish();
    }

    if (const json* hj = top.child("handover"))
    {
        auto& h = c.handover;
        ObjectReader hr(*hj, "handover");
        hr.get("t_rrc_ms", h.t_rrc_ms);
        hr.get("t_processing_ms", h.t_processing_ms);
        hr.get("t_margin_ms", h.t_margin_ms);
        hr.get("t_delta_ms", h.t_delta_ms);
        hr.get("association_period_ms", h.association_period_ms);
        hr.get("prep_delay_ms", h.prep_delay_ms);
        hr.get("rach_duration_ms", h.rach_duration_ms);
        hr.get("pingpong_window_s", h.pingpong_window_s);
        hr.finish();
    }

    if (const json* tj = top.child("traffic"))
    {
        auto& t = c.traffic;
        ObjectReader tr(*tj, "traffic");
        tr.get("packet_size_bits", t.packet_size_bits);
        tr.get("arrival_rate_pps", t.arrival_rate_pps);
        tr.get("uplink", t.uplink);
        tr.get("downlink", t.downlink);
        tr.finish();
    }

    if (const json* sj = top.child("sweep"))
    {
        ObjectReader sr(*sj, "sweep");
        sr.get("a3_offset_db", c.sweep.a3_offset_db);
        sr.get("ttt_ms", c.sweep.ttt_ms);
        sr.finish();
    }

    top.finish();
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    return parse_config(parse_file(path), path.parent_path());
}

json to_json(const ScenarioConfig& c)
{
    const auto& r = c.radio;
    const auto& m = c.measurement;
    const auto& h = c.handover;
    const auto& t = c.traffic;
    return json{
        {"carrier_frequency_hz", c.carrier_frequency_hz},
        {"bandwidth_hz", c.bandwidth_hz},
        {"subcarrier_spacing_hz", c.subcarrier_spacing_hz},
        {"duplex_mode", to_string(c.duplex_mode)},
        {"isd_m", c.isd_m},
        {"track_length_m", c.track_length_m},
        {"rail_offset_m", c.rail_offset_m},
        {"train_speed_mps", c.train_speed_mps},
        {"sim_duration_s", c.sim_duration_s},
        {"step_s", c.step_s},
        {"n_trains", c.n_trains},
        {"gnb_height_m", c.gnb_height_m},
        {"ue_height_m", c.ue_height_m},
        {"n_realizations", c.n_realizations},
        {"base_seed", c.base_seed},
        {"eirp_dbm", c.eirp_dbm},
        {"ue_noise_figure_db", c.ue_noise_figure_db},
        {"radio",
         {{"avg_building_height_m", r.avg_building_height_m},
          {"street_width_m", r.street_width_m},
          {"rma", to_json(r.rma)},
          {"los_persistence_distance_m", r.los_persistence_distance_m},
          {"shadowing_enabled", r.shadowing_enabled},
          {"stochastic_los", r.stochastic_los},
          {"interference_mode", to_string(r.interference_mode)},
          {"max_spectral_efficiency_bps_hz", r.max_spectral_efficiency_bps_hz},
          {"spatial_layers", r.spatial_layers},
          {"n_subcarriers", r.n_subcarriers}}},
        {"measurement",
         {{"offset_db", m.offset_db},
          {"hysteresis_db", m.hysteresis_db},
          {"ttt_ms", m.ttt_ms},
          {"l3_filter_k", m.l3_filter_k},
          {"l1_period_ms", m.l1_period_ms}}},
        {"handover",
         {{"t_rrc_ms", h.t_rrc_ms},
          {"t_processing_ms", h.t_processing_ms},
          {"t_margin_ms", h.t_margin_ms},
          {"t_delta_ms", h.t_delta_ms},
          {"association_period_ms", h.association_period_ms},
          {"prep_delay_ms", h.prep_delay_ms},
          {"rach_duration_ms", h.rach_duration_ms},
          {"pingpong_window_s", h.pingpong_window_s}}},
        {"traffic",
         {{"packet_size_bits", t.packet_size_bits},
          {"arrival_rate_pps", t.arrival_rate_pps},
          {"uplink", t.uplink},
          {"downlink", t.downlink}}},
        {"sweep", {{"a3_offset_db", c.sweep.a3_offset_db}, {"ttt_ms", c.sweep.ttt_ms}}},
    };
}

}   // namespace frmcs
