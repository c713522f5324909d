#include <doctest.h>

#include <fstream>

#include "frmcs/config.hpp"

using namespace frmcs;

namespace
{
const std::filesystem::path kRoot = FRMCS_SOURCE_DIR;
}

TEST_CASE("shipped rural config equals the built-in defaults")
{
    const ScenarioConfig cfg = load_config(kRoot / "configs/rural_500kmh.json");
    CHECK(cfg == ScenarioConfig{});
    CHECK(cfg.carrier_frequency_hz == 900e6);
    CHECK(cfg.bandwidth_hz == 3e6);
    CHECK(cfg.isd_m == 8000.0);
    CHECK(cfg.track_length_m == 16000.0);
    CHECK(cfg.train_speed_mps == doctest::Approx(138.8889).epsilon(1e-6));
    CHECK(cfg.sim_duration_s == 115.14);
    CHECK(cfg.n_trains == 2);
    CHECK(cfg.n_realizations == 29);
    CHECK(cfg.traffic.load_bps() == 10e6);
    CHECK(cfg.sweep.a3_offset_db == std::vector<double>{2, 4, 6, 8});
    CHECK(cfg.sweep.ttt_ms == std::vector<double>{80, 160, 240});
    CHECK(cfg.handover.t_iu_max_ms() == 20.0);
    CHECK(cfg.handover.fixed_d_handover_ms() == 27.0);
}

TEST_CASE("rma constants file")
{
    const RmaConstants c = load_rma_constants(kRoot / "data/rma_constants.json");
    CHECK(c == RmaConstants{});
    CHECK(parse_rma_constants(to_json(c)) == c);
}

TEST_CASE("round trip through json")
{
    ScenarioConfig cfg;
    cfg.eirp_dbm = 58.5;
    cfg.measurement.hysteresis_db = 1.0;
    cfg.radio.interference_mode = InterferenceMode::FullBufferNeighbors;
    cfg.sweep.ttt_ms = {40, 320};
    CHECK(parse_config(to_json(cfg)) == cfg);
}

TEST_CASE("missing keys take defaults")
{
    const ScenarioConfig cfg = parse_config(json::parse(R"({"eirp_dbm": 50})"));
    CHECK(cfg.eirp_dbm == 50.0);
    CHECK(cfg.isd_m == 8000.0);
}

TEST_CASE("validation errors")
{
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"eirp_dbm": 70})")), doctest::Contains("63 dBm"),
                         ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"isd_m": -1})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"sim_duration_s": 200})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"n_trains": 0})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"measurement": {"ttt_ms": -5}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"sweep": {"ttt_ms": []}})")), ConfigError);
}

TEST_CASE("strict parsing")
{
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"eirp": 50})")), doctest::Contains("unknown key"),
                         ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"radio": {"shadowing": true}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"eirp_dbm": "high"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"duplex_mode": "XDD"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"([1, 2])")), ConfigError);
    CHECK_THROWS_AS(
        parse_config(json::parse(R"({"radio": {"rma": {}, "rma_constants_file": "x.json"}})")), ConfigError);
}

TEST_CASE("load errors")
{
    CHECK_THROWS_AS(load_config(kRoot / "does/not/exist.json"), ConfigError);
    const auto tmp = std::filesystem::temp_directory_path() / "frmcs_bad.json";
    std::ofstream(tmp) << "{ not json";
    CHECK_THROWS_AS(load_config(tmp), ConfigError);
    std::filesystem::remove(tmp);
}
