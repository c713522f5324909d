#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace frmcs
{

using json = nlohmann::json;

/// Raised for malformed files and for configurations that violate an invariant.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class DuplexMode
{
    Fdd,
    Tdd
};

enum class InterferenceMode
{
    NoiseOnly,
    FullBufferNeighbors
};

/// Large-scale RMa coefficients that are not part of the closed-form pathloss
/// expressions (TR 38.901 Tables 7.4.1-1, 7.4.2-1 and 7.5-6).
struct RmaConstants
{
    double los_always_radius_m = 10.0;
    double los_decay_m = 1000.0;
    double min_distance_m = 10.0;
    double sf_sigma_los_db = 4.0;        // d2d <= breakpoint
    double sf_sigma_los_far_db = 6.0;    // d2d > breakpoint
    double sf_sigma_nlos_db = 8.0;
    double sf_correlation_los_m = 37.0;
    double sf_correlation_nlos_m = 120.0;

    bool operator==(const RmaConstants&) const = default;
};

struct RadioParams
{
    double avg_building_height_m = 5.0;
    double street_width_m = 20.0;
    RmaConstants rma;
    double los_persistence_distance_m = 50.0;
    bool shadowing_enabled = true;
    bool stochastic_los = true;
    InterferenceMode interference_mode = InterferenceMode::NoiseOnly;
    double max_spectral_efficiency_bps_hz = 14.8;
    int spatial_layers = 2;
    int n_subcarriers = 180;

    bool operator==(const RadioParams&) const = default;
};

/// A3 event and L1/L3 measurement settings. Cell and frequency offsets are
/// fixed at zero, so only O and H enter the entering/leaving conditions.
struct A3Config
{
    double offset_db = 2.0;
    double hysteresis_db = 0.0;
    double ttt_ms = 80.0;
    int l3_filter_k = 4;
    double l1_period_ms = 20.0;

    bool operator==(const A3Config&) const = default;
};

struct HandoverTimingConfig
{
    double t_rrc_ms = 10.0;
    double t_processing_ms = 20.0;
    double t_margin_ms = 2.0;
    double t_delta_ms = 5.0;
    double association_period_ms = 10.0;
    double prep_delay_ms = 10.0;
    double rach_duration_ms = 5.0;
    double pingpong_window_s = 1.0;

    /// Upper bound of the PRACH-occasion wait T_IU.
    double t_iu_max_ms() const { return association_period_ms + 10.0; }
    double fixed_d_handover_ms() const { return t_processing_ms + t_margin_ms + t_delta_ms; }

    bool operator==(const HandoverTimingConfig&) const = default;
};

struct TrafficConfig
{
    double packet_size_bits = 4.0e6;   // 0.5 MB, 1 MB = 10^6 bytes
    double arrival_rate_pps = 2.5;
    bool uplink = true;
    bool downlink = true;

    double load_bps() const { return packet_size_bits * arrival_rate_pps; }
    int n_directions() const { return int(uplink) + int(downlink); }

    bool operator==(const TrafficConfig&) const = default;
};

struct SweepGrid
{
    std::vector<double> a3_offset_db{2.0, 4.0, 6.0, 8.0};
    std::vector<double> ttt_ms{80.0, 160.0, 240.0};

    bool operator==(const SweepGrid&) const = default;
};

struct ScenarioConfig
{
    double carrier_frequency_hz = 900e6;
    double bandwidth_hz = 3e6;
    double subcarrier_spacing_hz = 15e3;
    DuplexMode duplex_mode = DuplexMode::Fdd;
    double isd_m = 8000.0;
    double track_length_m = 16000.0;
    double rail_offset_m = 100.0;
    double train_speed_mps = 1250.0 / 9.0;   // 500 km/h
    double sim_duration_s = 115.14;
    double step_s = 1e-3;
    int n_trains = 2;
    double gnb_height_m = 35.0;
    double ue_height_m = 4.0;
    int n_realizations = 29;
    std::uint64_t base_seed = 1;
    double eirp_dbm = 61.0;
    double ue_noise_figure_db = 9.0;

    RadioParams radio;
    A3Config measurement;
    HandoverTimingConfig handover;
    TrafficConfig traffic;
    SweepGrid sweep;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the first violated invariant.
void validate(const ScenarioConfig& cfg);

/// Strict parse: unknown keys are rejected, missing keys take defaults.
/// `base_dir` resolves a relative `radio.rma_constants_file`.
ScenarioConfig parse_config(const json& j, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

json to_json(const ScenarioConfig& cfg);

RmaConstants parse_rma_constants(const json& j);
RmaConstants load_rma_constants(const std::filesystem::path& path);
json to_json(const RmaConstants& c);

}   // namespace frmcs
