#include "resilience/pipeline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "resilience/errors.hpp"
#include "resilience/probability.hpp"

namespace resilience {

PerChannel pipeline_lambda_star(const ExperimentConfig& cfg) {
  return lambda_star(cfg.noise, cfg.grid.delta_t, cfg.rg.step);
}

ErrorRates pipeline_error_rates(const ExperimentConfig& cfg) {
  const PerChannel lam = pipeline_lambda_star(cfg);
  const PulseSequence seq = cfg.pulse_sequence();
  PerChannel eps;
  for (Channel c : kChannels) {
    if (lam[c] == 0.0) continue;
    const Correlator corr =
        power_law_correlator(cfg.noise.bath.delta[c], cfg.noise.bath.z);
    eps[c] = epsilon_with_pulses(corr, lam[c], cfg.grid.delta_t, seq);
  }
  return make_error_rates(eps, lam);
}

PipelineReport run_pipeline(const ExperimentConfig& cfg) {
  cfg.noise.validate();
  PipelineReport rep;
  rep.classes = classify(cfg.noise, cfg.grid.comp_dim, cfg.pulses.n);
  for (Channel c : kChannels)
    rep.pulses_needed[static_cast<std::size_t>(c)] = pulses_needed(
        cfg.grid.comp_dim, cfg.noise.bath.z, cfg.noise.bath.delta[c]);

  // only coupled channels can generate errors
  std::ostringstream bad;
  for (Channel c : kChannels) {
    if (cfg.noise.lambda[c] == 0.0) continue;
    const auto& cls = rep.classes[static_cast<std::size_t>(c)];
    if (cls.verdict == Verdict::Irrelevant) continue;
    if (bad.tellp() > 0) bad << "; ";
    bad << "channel " << channel_name(c) << " flows "
        << (cls.verdict == Verdict::Relevant ? "relevant" : "marginal")
        << " (exponent " << cls.exponent << ")";
    const auto needed = rep.pulses_needed[static_cast<std::size_t>(c)];
    if (needed)
      bad << ", pulses_needed = " << *needed;
    else
      bad << ", not reachable by pulses at z = 0";
  }
  if (bad.tellp() > 0)
    throw ModelError(
        "stochastic reduction does not apply: " + bad.str() +
        "; resilience is not provable by this construction");

  const ErrorRates rates = pipeline_error_rates(cfg);
  rep.lambda_star = rates.lambda_star;
  rep.eps = rates.eps;
  rep.total_eps = rates.eps.sum();

  const StabilizerCode code = steane_code();
  rep.logical = logical_error_rate(code, rates.eps, cfg.mc.samples,
                                   cfg.mc.seed);

  if (rep.total_eps > 0.0) {
    const double c_coeff = rep.logical.rate / (rep.total_eps * rep.total_eps);
    rep.pseudo_threshold = c_coeff > 0.0
                               ? 1.0 / c_coeff
                               : std::numeric_limits<double>::infinity();
    rep.below_threshold = rep.logical.rate < rep.total_eps;
    if (c_coeff > 0.0)
      rep.concatenation =
          concatenation_map(rep.total_eps, c_coeff, cfg.threshold.levels)
              .rates;
    else
      rep.concatenation.assign(
          static_cast<std::size_t>(cfg.threshold.levels) + 1, 0.0);
  } else {
    rep.pseudo_threshold = std::numeric_limits<double>::infinity();
    rep.below_threshold = true;
    rep.concatenation.assign(
        static_cast<std::size_t>(cfg.threshold.levels) + 1, 0.0);
  }
  if (!rep.concatenation.empty()) rep.concatenation[0] = rep.total_eps;
  return rep;
}

}  // namespace resilience
