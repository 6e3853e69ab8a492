#include <doctest.h>

#include <vector>

#include "resilience/config.hpp"
#include "resilience/errors.hpp"

using namespace resilience;

TEST_SUITE_BEGIN("config");

TEST_CASE("defaults load from an empty document") {
  const auto cfg = load_config_text("{}");
  CHECK(cfg.noise.bath.z == 1.0);
  CHECK(cfg.noise.bath.v == 1.0);
  CHECK(cfg.noise.bath.cutoff == 1.0);
  CHECK(cfg.grid.delta_t == 1.0);
  CHECK(cfg.mc.seed == kDefaultSeed);
  CHECK_FALSE(cfg.mc.seed_given);
  CHECK(cfg.scan.sizes == std::vector<int>{16, 32, 64, 128, 256});
  CHECK(cfg.output.format == "csv");
}

TEST_CASE("full document round trip") {
  const char* doc = R"({
    "noise": {
      "z": 1.0, "v": 2.0, "cutoff": 8.0,
      "delta": {"x": 0.4, "z": 1.5},
      "lambda": {"z": 0.1},
      "beta_h": [[0,0,0],[0,0,0],[0,0,-1]]
    },
    "grid": {"delta_t": 2.0, "n_cycles": 8, "n_qubits": 4, "comp_dim": 2},
    "pulses": {"n": 2, "schedule": [0.5, 1.5]},
    "rg": {"ell_max": 4.0, "step": 0.001, "kind": "kt", "x0": -0.5, "y0": 0.1},
    "scan": {"sizes": [8, 16, 32, 64], "channel": "x"},
    "mc": {"samples": 50000, "sweeps": 100, "seed": 7},
    "coulomb": {"side": 6, "coupling": 2.5, "fugacity": 0.3, "max_pairs": 2},
    "threshold": {"p": [0.01, 0.03], "levels": 3},
    "output": {"path": "out.csv", "format": "json"}
  })";
  const auto cfg = load_config_text(doc);
  CHECK(cfg.noise.bath.delta.x == 0.4);
  CHECK(cfg.noise.bath.delta.y == 0.0);
  CHECK(cfg.noise.beta_h[2][2] == -1.0);
  CHECK(cfg.grid.comp_dim == 2);
  CHECK(cfg.pulses.schedule->size() == 2);
  CHECK(cfg.rg.kind == "kt");
  CHECK(cfg.scan.channel == Channel::X);
  CHECK(cfg.mc.seed == 7);
  CHECK(cfg.mc.seed_given);
  CHECK(cfg.coulomb.side == 6);
  CHECK(cfg.threshold.p.size() == 2);
  CHECK(cfg.output.format == "json");

  const auto grid = cfg.grid_spec();
  CHECK(grid.spacing == doctest::Approx(4.0));  // (v dt)^(1/z) = 4
  CHECK(cfg.pulse_sequence().schedule == std::vector<double>{0.5, 1.5});
}

TEST_CASE("unknown keys are rejected with their full path") {
  CHECK_THROWS_WITH_AS(load_config_text(R"({"nois": {}})"),
                       "unknown config key: nois", ConfigError);
  CHECK_THROWS_WITH_AS(load_config_text(R"({"noise": {"deltaa": 1}})"),
                       "unknown config key: noise.deltaa", ConfigError);
  CHECK_THROWS_WITH_AS(load_config_text(R"({"noise": {"delta": {"w": 1}}})"),
                       "unknown config key: noise.delta.w", ConfigError);
  CHECK_THROWS_WITH_AS(load_config_text(R"({"grid": {"cells": 4}})"),
                       "unknown config key: grid.cells", ConfigError);
}

TEST_CASE("value validation names the offending key") {
  CHECK_THROWS_AS(load_config_text(R"({"grid": {"delta_t": -1}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"grid": {"n_cycles": 2.5}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"noise": {"v": -2}})"), ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"noise": {"beta_g": [[1,2],[3,4]]}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"rg": {"kind": "euler"}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"output": {"format": "xml"}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config_text(R"({"scan": {"sizes": [16, 32]}})"),
                  ConfigError);
  CHECK_THROWS_AS(
      load_config_text(R"({"pulses": {"n": 2, "schedule": [0.5]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      load_config_text(R"({"grid": {"delta_t": 1}, "pulses": {"n": 1, "schedule": [2.0]}})"),
      ConfigError);  // flip outside the cycle
  CHECK_THROWS_AS(load_config_text("not json"), ConfigError);
}

TEST_CASE("overrides apply with JSON value parsing") {
  const std::vector<std::string> overrides{
      "noise.delta.z=1.5", "grid.n_cycles=32", "scan.sizes=[8,16,32,64]",
      "output.format=json", "rg.kind=kt"};
  const auto cfg = load_config_text("{}", overrides);
  CHECK(cfg.noise.bath.delta.z == 1.5);
  CHECK(cfg.grid.n_cycles == 32);
  CHECK(cfg.scan.sizes == std::vector<int>{8, 16, 32, 64});
  CHECK(cfg.output.format == "json");
  CHECK(cfg.rg.kind == "kt");

  CHECK_THROWS_AS(load_config_text("{}", {{"noise.bogus=1"}}), ConfigError);
  CHECK_THROWS_AS(load_config_text("{}", {{"justakey"}}), ConfigError);
}

TEST_CASE("missing file is a config error") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("noise model serializes and loads back unchanged") {
  NoiseModel m;
  m.bath.z = 0.5;
  m.bath.v = 2.0;
  m.bath.cutoff = 8.0;
  m.bath.delta.x = 0.4;
  m.bath.delta.z = 1.25;
  m.lambda.z = 0.07;
  m.beta_g[1][2] = 0.3;
  m.beta_h[2][2] = -1.0;

  const auto cfg = load_config_text(noise_model_json(m));
  CHECK(cfg.noise.bath.z == m.bath.z);
  CHECK(cfg.noise.bath.v == m.bath.v);
  CHECK(cfg.noise.bath.cutoff == m.bath.cutoff);
  for (Channel c : kChannels) {
    CHECK(cfg.noise.bath.delta[c] == m.bath.delta[c]);
    CHECK(cfg.noise.lambda[c] == m.lambda[c]);
  }
  CHECK(cfg.noise.beta_g == m.beta_g);
  CHECK(cfg.noise.beta_h == m.beta_h);
}

TEST_SUITE_END();
