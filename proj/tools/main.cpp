// Batch driver: every pipeline stage as a subcommand over one JSON config.
// Exit codes: 0 success, 1 config error, 2 model-validity error.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "resilience/config.hpp"
#include "resilience/coulombgas.hpp"
#include "resilience/errors.hpp"
#include "resilience/io.hpp"
#include "resilience/pipeline.hpp"
#include "resilience/probability.hpp"
#include "resilience/rg.hpp"
#include "resilience/stabilizer.hpp"

namespace {

using nlohmann::json;
using namespace resilience;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON experiment config file");
  cmd->add_option("--set", args.overrides,
                  "Override a config key, key.path=value (repeatable)");
  cmd->add_option("--seed", args.seed,
                  "Root seed; overrides mc.seed and RESILIENCE_RG_SEED");
  cmd->add_option("--out", args.out_path, "Output path; overrides output.path");
  cmd->add_option("--format", args.format, "Output format, csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->footer(config_key_reference());
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig cfg = load_config(args.config_path, args.overrides);
  if (args.seed) {
    cfg.mc.seed = *args.seed;
    cfg.mc.seed_given = true;
  } else if (!cfg.mc.seed_given) {
    if (const char* env = std::getenv("RESILIENCE_RG_SEED")) {
      try {
        cfg.mc.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw ConfigError(
            "RESILIENCE_RG_SEED must be a non-negative integer");
      }
      cfg.mc.seed_given = true;
    }
  }
  if (!args.out_path.empty()) cfg.output.path = args.out_path;
  if (!args.format.empty()) cfg.output.format = args.format;
  return cfg;
}

// chained sub-seeds for independent tasks under one root seed
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t task) {
  std::uint64_t s = root;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= task; ++i) out = splitmix64_next(s);
  return out;
}

std::string sibling_json_path(const std::string& path,
                              const std::string& tag) {
  const std::string suffix = ".csv";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return path.substr(0, path.size() - suffix.size()) + "." + tag + ".json";
  return path + "." + tag + ".json";
}

json per_channel_json(const PerChannel& v) {
  return json{{"x", v.x}, {"y", v.y}, {"z", v.z}};
}

int run_classify(const ExperimentConfig& cfg) {
  const auto classes = classify(cfg.noise, cfg.grid.comp_dim, cfg.pulses.n);
  json out_channels = json::object();
  for (Channel c : kChannels) {
    const auto& cls = classes[static_cast<std::size_t>(c)];
    const auto needed = pulses_needed(cfg.grid.comp_dim, cfg.noise.bath.z,
                                      cfg.noise.bath.delta[c]);
    std::cout << channel_name(c) << ": " << verdict_name(cls.verdict)
              << ", exponent = " << cls.exponent << ", pulses_needed = ";
    if (needed)
      std::cout << *needed;
    else
      std::cout << "impossible";
    std::cout << "\n";
    json jc{{"verdict", std::string(verdict_name(cls.verdict))},
            {"exponent", cls.exponent}};
    if (needed)
      jc["pulses_needed"] = *needed;
    else
      jc["pulses_needed"] = "impossible";
    out_channels[std::string(channel_name(c))] = jc;
  }
  if (!cfg.output.path.empty()) {
    if (cfg.output.format == "json") {
      write_text_file(cfg.output.path,
                      json{{"channels", out_channels}}.dump(2) + "\n");
    } else {
      std::string csv = "channel,exponent,verdict,pulses_needed\n";
      for (Channel c : kChannels) {
        const auto& cls = classes[static_cast<std::size_t>(c)];
        const auto needed = pulses_needed(cfg.grid.comp_dim, cfg.noise.bath.z,
                                          cfg.noise.bath.delta[c]);
        csv += std::string(channel_name(c)) + "," +
               format_double(cls.exponent) + "," +
               std::string(verdict_name(cls.verdict)) + "," +
               (needed ? std::to_string(*needed) : std::string("impossible")) +
               "\n";
      }
      write_text_file(cfg.output.path, csv);
    }
  }
  return 0;
}

int run_flow(const ExperimentConfig& cfg) {
  const long steps = static_cast<long>(cfg.rg.ell_max / cfg.rg.step) + 1;
  const int stride = static_cast<int>(std::max(1L, steps / 4096));
  if (cfg.rg.kind == "kt") {
    KtOptions opt;
    opt.record_stride = stride;
    const auto traj = kt_flow(cfg.rg.x0, cfg.rg.y0, cfg.rg.ell_max,
                              cfg.rg.step, opt);
    std::cout << "kt flow: verdict = " << kt_verdict_name(traj.verdict)
              << ", terminal x = " << traj.x << ", y = " << traj.y << "\n";
    if (!cfg.output.path.empty()) write_text_file(cfg.output.path, kt_csv(traj));
    return 0;
  }
  const std::array<double, 3> l0{cfg.noise.lambda.x, cfg.noise.lambda.y,
                                 cfg.noise.lambda.z};
  CouplingTable g(3, std::vector<double>(3)), h(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g[i][j] = cfg.noise.beta_g[i][j];
      h[i][j] = cfg.noise.beta_h[i][j];
    }
  BetaOptions opt;
  opt.record_stride = stride;
  const auto traj = integrate_beta(l0, g, h, cfg.rg.ell_max, cfg.rg.step, opt);
  std::cout << "beta flow: terminal lambda = (" << traj.terminal[0] << ", "
            << traj.terminal[1] << ", " << traj.terminal[2] << ")"
            << (traj.diverged ? ", diverged" : "") << "\n";
  if (!cfg.output.path.empty()) write_text_file(cfg.output.path, flow_csv(traj));
  if (traj.diverged)
    throw ModelError("flow diverged before rg.ell_max; couplings left the "
                     "perturbative regime");
  return 0;
}

int run_epsilon(const ExperimentConfig& cfg) {
  const ErrorRates rates = pipeline_error_rates(cfg);
  for (Channel c : kChannels)
    std::cout << channel_name(c) << ": lambda_star = " << rates.lambda_star[c]
              << ", epsilon = " << rates.eps[c] << "\n";
  std::cout << "total epsilon = " << rates.eps.sum() << "\n";
  if (!cfg.output.path.empty()) {
    if (cfg.output.format == "json") {
      const json j{{"lambda_star", per_channel_json(rates.lambda_star)},
                   {"epsilon", per_channel_json(rates.eps)},
                   {"total_epsilon", rates.eps.sum()}};
      write_text_file(cfg.output.path, j.dump(2) + "\n");
    } else {
      std::string csv = "channel,lambda_star,epsilon\n";
      for (Channel c : kChannels)
        csv += std::string(channel_name(c)) + "," +
               format_double(rates.lambda_star[c]) + "," +
               format_double(rates.eps[c]) + "\n";
      write_text_file(cfg.output.path, csv);
    }
  }
  return 0;
}

int run_scan(const ExperimentConfig& cfg) {
  const Channel ch = cfg.scan.channel;
  if (cfg.noise.lambda[ch] == 0.0)
    throw ConfigError(std::string("scaling-scan needs noise.lambda.") +
                      std::string(channel_name(ch)) + " > 0");
  const ErrorRates rates = pipeline_error_rates(cfg);

  ScanSpec spec;
  spec.correlator =
      power_law_correlator(cfg.noise.bath.delta[ch], cfg.noise.bath.z);
  spec.lambda_star = rates.lambda_star[ch];
  spec.rates = rates;
  spec.channel = ch;
  spec.delta_t = cfg.grid.delta_t;
  spec.comp_dim = cfg.grid.comp_dim;
  spec.sizes = cfg.scan.sizes;

  const ScanResult scan = scaling_scan(spec);
  for (const auto& r : scan.rows)
    std::cout << "L = " << r.size << ": sum = " << r.sum
              << ", ratio = " << r.ratio << "\n";
  std::cout << "fit: slope = " << scan.fit.slope << " +- " << scan.fit.std_err
            << ", behavior = " << scan.behavior << "\n";

  if (!cfg.output.path.empty()) {
    write_text_file(cfg.output.path, scan_csv(scan));
    const json fit{{"slope", scan.fit.slope},
                   {"stderr", scan.fit.std_err},
                   {"verdict", scan.behavior}};
    write_text_file(sibling_json_path(cfg.output.path, "fit"),
                    fit.dump(2) + "\n");
  }
  return 0;
}

int run_coulomb(const ExperimentConfig& cfg) {
  LatticeSpec spec;
  spec.side = cfg.coulomb.side;
  spec.coupling = cfg.coulomb.coupling;
  spec.fugacity = cfg.coulomb.fugacity;
  spec.max_pairs = cfg.coulomb.max_pairs;

  McOptions opt;
  opt.burn_in = cfg.mc.sweeps / 10;
  opt.record_series = !cfg.output.path.empty() && cfg.output.format == "csv";
  const McResult res = metropolis_run(spec, cfg.mc.sweeps, cfg.mc.seed, opt);

  std::cout << "mean_pairs = " << res.obs.mean_pairs << " +- "
            << res.obs.stderr_pairs << "\n"
            << "mean_r2 = " << res.obs.mean_r2 << " +- " << res.obs.stderr_r2
            << "\n"
            << "acceptance = " << res.obs.acceptance_rate
            << ", seed = " << res.obs.seed << "\n";

  const json summary{{"mean_pairs", res.obs.mean_pairs},
                     {"stderr_pairs", res.obs.stderr_pairs},
                     {"mean_r2", res.obs.mean_r2},
                     {"stderr_r2", res.obs.stderr_r2},
                     {"acceptance", res.obs.acceptance_rate},
                     {"seed", res.obs.seed}};
  if (!cfg.output.path.empty()) {
    if (cfg.output.format == "csv") {
      write_text_file(cfg.output.path, coulomb_csv(res.series));
      write_text_file(sibling_json_path(cfg.output.path, "summary"),
                      summary.dump(2) + "\n");
    } else {
      write_text_file(cfg.output.path, summary.dump(2) + "\n");
    }
  }
  return 0;
}

int run_threshold(const ExperimentConfig& cfg) {
  const StabilizerCode code = steane_code();
  std::string csv = "p,logical_rate,stderr\n";
  json points = json::array();
  double num = 0.0, den = 0.0;  // least-squares c through the origin
  for (std::size_t i = 0; i < cfg.threshold.p.size(); ++i) {
    const double p = cfg.threshold.p[i];
    PerChannel eps;
    eps.x = eps.y = eps.z = p / 3.0;  // depolarizing mix
    const auto est = logical_error_rate(code, eps, cfg.mc.samples,
                                        derive_seed(cfg.mc.seed, i));
    std::cout << "p = " << p << ": logical_rate = " << est.rate << " +- "
              << est.std_err << "\n";
    csv += format_double(p) + "," + format_double(est.rate) + "," +
           format_double(est.std_err) + "\n";
    points.push_back(
        {{"p", p}, {"logical_rate", est.rate}, {"stderr", est.std_err}});
    const double w = est.std_err > 0.0 ? 1.0 / (est.std_err * est.std_err)
                                       : 1.0;
    num += w * est.rate * p * p;
    den += w * p * p * p * p;
  }
  const double c_coeff = den > 0.0 ? num / den : 0.0;
  const double pseudo = c_coeff > 0.0
                            ? 1.0 / c_coeff
                            : std::numeric_limits<double>::infinity();
  std::cout << "quadratic coefficient c = " << c_coeff
            << ", pseudo_threshold = " << pseudo << "\n";
  if (!cfg.output.path.empty()) {
    const json summary{{"c", c_coeff},
                       {"pseudo_threshold", pseudo},
                       {"points", points}};
    if (cfg.output.format == "csv") {
      write_text_file(cfg.output.path, csv);
      write_text_file(sibling_json_path(cfg.output.path, "summary"),
                      summary.dump(2) + "\n");
    } else {
      write_text_file(cfg.output.path, summary.dump(2) + "\n");
    }
  }
  return 0;
}

int run_pipeline_cmd(const ExperimentConfig& cfg) {
  const PipelineReport rep = run_pipeline(cfg);
  for (Channel c : kChannels) {
    const auto& cls = rep.classes[static_cast<std::size_t>(c)];
    std::cout << channel_name(c) << ": " << verdict_name(cls.verdict)
              << ", exponent = " << cls.exponent
              << ", lambda_star = " << rep.lambda_star[c]
              << ", epsilon = " << rep.eps[c] << "\n";
  }
  std::cout << "total epsilon = " << rep.total_eps << "\n"
            << "logical rate = " << rep.logical.rate << " +- "
            << rep.logical.std_err << " (" << rep.logical.samples
            << " samples)\n"
            << "pseudo_threshold = " << rep.pseudo_threshold << "\n";
  if (rep.below_threshold) {
    std::cout << "phase (i): below threshold - encoded rate "
              << rep.logical.rate << " beats physical rate " << rep.total_eps
              << "; concatenation projection:";
    for (double r : rep.concatenation) std::cout << " " << r;
    std::cout << "\n";
  } else {
    std::cout << "phase (ii): above threshold - encoding does not improve on "
                 "the physical rate\n";
  }
  if (!cfg.output.path.empty()) {
    json channels = json::object();
    for (Channel c : kChannels) {
      const auto& cls = rep.classes[static_cast<std::size_t>(c)];
      channels[std::string(channel_name(c))] =
          json{{"verdict", std::string(verdict_name(cls.verdict))},
               {"exponent", cls.exponent}};
    }
    const json j{{"channels", channels},
                 {"lambda_star", per_channel_json(rep.lambda_star)},
                 {"epsilon", per_channel_json(rep.eps)},
                 {"total_epsilon", rep.total_eps},
                 {"logical_rate", rep.logical.rate},
                 {"logical_stderr", rep.logical.std_err},
                 {"pseudo_threshold", rep.pseudo_threshold},
                 {"below_threshold", rep.below_threshold},
                 {"concatenation", rep.concatenation}};
    write_text_file(cfg.output.path, j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "resilience-rg: noise-model classification, RG flows, pair-sum scaling "
      "scans, Coulomb-gas sampling, and stabilizer threshold Monte Carlo"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* desc;
    int (*run)(const ExperimentConfig&);
  };
  static const Sub subs[] = {
      {"classify", "Per-channel flow exponent, verdict, and pulses needed",
       run_classify},
      {"flow", "Integrate the coupling flow (rg.kind = beta) or the reduced "
               "KT recursion (rg.kind = kt) and emit CSV",
       run_flow},
      {"epsilon", "Renormalized couplings and per-cycle error rates",
       run_epsilon},
      {"scaling-scan", "Pair sums over dyadic grids with a scaling-exponent "
                       "fit; emits CSV plus a fit JSON",
       run_scan},
      {"coulomb", "Metropolis run of the 2-d lattice Coulomb gas", run_coulomb},
      {"threshold", "Depolarizing sweep of the [[7,1,3]] logical error rate "
                    "with a pseudo-threshold fit",
       run_threshold},
      {"pipeline", "classify -> lambda* -> epsilon -> threshold; reports the "
                   "phase verdict",
       run_pipeline_cmd},
  };

  CommonArgs args[std::size(subs)];
  std::function<int()> task;
  for (std::size_t i = 0; i < std::size(subs); ++i) {
    CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].desc);
    add_common(cmd, args[i]);
    cmd->callback([&, i] {
      task = [&, i] { return subs[i].run(load(args[i])); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    return task();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
