#pragma once

#include <array>
#include <optional>
#include <vector>

#include "resilience/config.hpp"
#include "resilience/rg.hpp"
#include "resilience/stabilizer.hpp"

namespace resilience {

// Renormalized couplings at the grid scale, using the config's flow step.
PerChannel pipeline_lambda_star(const ExperimentConfig& cfg);

// Per-channel error rates from the renormalized couplings and the pulse
// schedule; throws ModelError when the total leaves the perturbative regime.
ErrorRates pipeline_error_rates(const ExperimentConfig& cfg);

struct PipelineReport {
  std::array<Classification, 3> classes;
  std::array<std::optional<int>, 3> pulses_needed;
  PerChannel lambda_star;
  PerChannel eps;
  double total_eps = 0.0;
  RateEstimate logical;
  double pseudo_threshold = 0.0;  // infinite when no failure was observed
  bool below_threshold = false;
  std::vector<double> concatenation;
};

// classify -> lambda* -> epsilon -> threshold Monte Carlo. Channels with a
// nonzero coupling must flow irrelevant; otherwise the stochastic reduction
// does not apply and a ModelError is thrown (CLI exit code 2).
PipelineReport run_pipeline(const ExperimentConfig& cfg);

}  // namespace resilience
