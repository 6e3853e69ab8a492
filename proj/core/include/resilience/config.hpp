#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resilience/bath.hpp"
#include "resilience/channel.hpp"
#include "resilience/hypercube.hpp"

namespace resilience {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct GridSection {
  double delta_t = 1.0;
  int n_cycles = 16;
  int n_qubits = 16;
  int comp_dim = 1;
};

struct PulseSection {
  int n = 0;
  std::optional<std::vector<double>> schedule;  // default: equally spaced
};

struct RgSection {
  double ell_max = 10.0;
  double step = 1e-3;
  std::string kind = "beta";  // "beta" or "kt"
  double x0 = 0.0;            // kt initial conditions
  double y0 = 0.0;
};

struct ScanSection {
  std::vector<int> sizes{16, 32, 64, 128, 256};
  Channel channel = Channel::Z;
};

struct McSection {
  std::uint64_t samples = 1'000'000;
  std::uint64_t sweeps = 20'000;
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
};

struct CoulombSection {
  int side = 4;
  double coupling = 4.0;
  double fugacity = 0.2;
  int max_pairs = 0;
};

struct ThresholdSection {
  std::vector<double> p{1e-3, 3e-3, 1e-2};
  int levels = 5;
};

struct OutputSection {
  std::string path;            // empty: print to stdout only
  std::string format = "csv";  // "csv" or "json"
};

struct ExperimentConfig {
  NoiseModel noise;
  GridSection grid;
  PulseSection pulses;
  RgSection rg;
  ScanSection scan;
  McSection mc;
  CoulombSection coulomb;
  ThresholdSection threshold;
  OutputSection output;

  GridSpec grid_spec() const {
    return make_grid(grid.delta_t, grid.n_cycles, grid.n_qubits, grid.comp_dim,
                     noise.bath);
  }
  PulseSequence pulse_sequence() const {
    if (pulses.schedule) {
      PulseSequence seq{*pulses.schedule};
      validate_pulses(seq, grid.delta_t);
      return seq;
    }
    return equally_spaced_pulses(pulses.n, grid.delta_t);
  }
};

// Parses and fully validates a config document; unknown keys are rejected
// with a message naming them. Overrides are dotted "key.path=value" strings
// applied before validation; values parse as JSON with a bare-string
// fallback. Empty path: defaults plus overrides only.
ExperimentConfig load_config(const std::string& path,
                             std::span<const std::string> overrides = {});
ExperimentConfig load_config_text(const std::string& text,
                                  std::span<const std::string> overrides = {});

// accepted keys per section, for --help output
std::string config_key_reference();

// canonical JSON text for a noise model (the `noise` config section);
// load_config_text round-trips it
std::string noise_model_json(const NoiseModel& model);

}  // namespace resilience
