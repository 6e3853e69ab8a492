#include "resilience/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "resilience/errors.hpp"

namespace resilience {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key " + key + ": " + what);
}

void expect_object(const json& j, const std::string& key) {
  if (!j.is_object()) fail(key, "expected an object");
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) fail(key, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) fail(key, "expected an integer");
  return j.get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& key) {
  if (!j.is_number_unsigned() && !j.is_number_integer())
    fail(key, "expected a non-negative integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0) fail(key, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) fail(key, "expected a string");
  return j.get<std::string>();
}

void reject_unknown(const json& j, const std::string& section,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw ConfigError("unknown config key: " +
                        (section.empty() ? key : section + "." + key));
  }
}

PerChannel parse_per_channel(const json& j, const std::string& key) {
  expect_object(j, key);
  reject_unknown(j, key, {"x", "y", "z"});
  PerChannel out;
  for (Channel c : kChannels) {
    const auto name = std::string(channel_name(c));
    if (j.contains(name)) out[c] = get_number(j.at(name), key + "." + name);
  }
  return out;
}

std::array<std::array<double, 3>, 3> parse_table(const json& j,
                                                 const std::string& key) {
  if (!j.is_array() || j.size() != 3) fail(key, "expected a 3 x 3 array");
  std::array<std::array<double, 3>, 3> out{};
  for (int r = 0; r < 3; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != 3) fail(key, "expected a 3 x 3 array");
    for (int c = 0; c < 3; ++c)
      out[r][c] = get_number(row.at(c), key + " entry");
  }
  return out;
}

void parse_noise(const json& j, NoiseModel& noise) {
  expect_object(j, "noise");
  reject_unknown(j, "noise",
                 {"z", "v", "cutoff", "delta", "lambda", "beta_g", "beta_h"});
  if (j.contains("z")) noise.bath.z = get_number(j.at("z"), "noise.z");
  if (j.contains("v")) noise.bath.v = get_number(j.at("v"), "noise.v");
  if (j.contains("cutoff"))
    noise.bath.cutoff = get_number(j.at("cutoff"), "noise.cutoff");
  if (j.contains("delta"))
    noise.bath.delta = parse_per_channel(j.at("delta"), "noise.delta");
  if (j.contains("lambda"))
    noise.lambda = parse_per_channel(j.at("lambda"), "noise.lambda");
  if (j.contains("beta_g"))
    noise.beta_g = parse_table(j.at("beta_g"), "noise.beta_g");
  if (j.contains("beta_h"))
    noise.beta_h = parse_table(j.at("beta_h"), "noise.beta_h");
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config key noise.") + e.what());
  }
}

void parse_grid(const json& j, GridSection& grid) {
  expect_object(j, "grid");
  reject_unknown(j, "grid", {"delta_t", "n_cycles", "n_qubits", "comp_dim"});
  if (j.contains("delta_t"))
    grid.delta_t = get_number(j.at("delta_t"), "grid.delta_t");
  if (j.contains("n_cycles"))
    grid.n_cycles = get_int(j.at("n_cycles"), "grid.n_cycles");
  if (j.contains("n_qubits"))
    grid.n_qubits = get_int(j.at("n_qubits"), "grid.n_qubits");
  if (j.contains("comp_dim"))
    grid.comp_dim = get_int(j.at("comp_dim"), "grid.comp_dim");
  if (!(grid.delta_t > 0.0)) fail("grid.delta_t", "must be positive");
  if (grid.n_cycles < 1) fail("grid.n_cycles", "must be positive");
  if (grid.n_qubits < 1) fail("grid.n_qubits", "must be positive");
  if (grid.comp_dim < 1) fail("grid.comp_dim", "must be positive");
}

void parse_pulses(const json& j, PulseSection& pulses) {
  expect_object(j, "pulses");
  reject_unknown(j, "pulses", {"n", "schedule"});
  if (j.contains("n")) pulses.n = get_int(j.at("n"), "pulses.n");
  if (pulses.n < 0) fail("pulses.n", "must be non-negative");
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    if (!s.is_array()) fail("pulses.schedule", "expected an array of times");
    std::vector<double> sched;
    for (const auto& t : s)
      sched.push_back(get_number(t, "pulses.schedule entry"));
    pulses.schedule = std::move(sched);
    if (static_cast<int>(pulses.schedule->size()) != pulses.n)
      fail("pulses.schedule", "length must equal pulses.n");
  }
}

void parse_rg(const json& j, RgSection& rg) {
  expect_object(j, "rg");
  reject_unknown(j, "rg", {"ell_max", "step", "kind", "x0", "y0"});
  if (j.contains("ell_max"))
    rg.ell_max = get_number(j.at("ell_max"), "rg.ell_max");
  if (j.contains("step")) rg.step = get_number(j.at("step"), "rg.step");
  if (j.contains("kind")) rg.kind = get_string(j.at("kind"), "rg.kind");
  if (j.contains("x0")) rg.x0 = get_number(j.at("x0"), "rg.x0");
  if (j.contains("y0")) rg.y0 = get_number(j.at("y0"), "rg.y0");
  if (!(rg.ell_max > 0.0)) fail("rg.ell_max", "must be positive");
  if (!(rg.step > 0.0)) fail("rg.step", "must be positive");
  if (rg.kind != "beta" && rg.kind != "kt")
    fail("rg.kind", "must be \"beta\" or \"kt\"");
  if (rg.kind == "kt" && !(rg.y0 >= 0.0)) fail("rg.y0", "must be >= 0");
}

void parse_scan(const json& j, ScanSection& scan) {
  expect_object(j, "scan");
  reject_unknown(j, "scan", {"sizes", "channel"});
  if (j.contains("sizes")) {
    const json& s = j.at("sizes");
    if (!s.is_array() || s.size() < 4)
      fail("scan.sizes", "expected an array of at least 4 sizes");
    scan.sizes.clear();
    for (const auto& v : s) {
      const int L = get_int(v, "scan.sizes entry");
      if (L < 2) fail("scan.sizes", "sizes must be >= 2");
      scan.sizes.push_back(L);
    }
  }
  if (j.contains("channel")) {
    try {
      scan.channel =
          channel_from_name(get_string(j.at("channel"), "scan.channel"));
    } catch (const std::invalid_argument&) {
      fail("scan.channel", "must be one of x, y, z");
    }
  }
}

void parse_mc(const json& j, McSection& mc) {
  expect_object(j, "mc");
  reject_unknown(j, "mc", {"samples", "sweeps", "seed"});
  if (j.contains("samples"))
    mc.samples = get_u64(j.at("samples"), "mc.samples");
  if (j.contains("sweeps")) mc.sweeps = get_u64(j.at("sweeps"), "mc.sweeps");
  if (j.contains("seed")) {
    mc.seed = get_u64(j.at("seed"), "mc.seed");
    mc.seed_given = true;
  }
  if (mc.sweeps < 1) fail("mc.sweeps", "must be >= 1");
}

void parse_coulomb(const json& j, CoulombSection& cg) {
  expect_object(j, "coulomb");
  reject_unknown(j, "coulomb", {"side", "coupling", "fugacity", "max_pairs"});
  if (j.contains("side")) cg.side = get_int(j.at("side"), "coulomb.side");
  if (j.contains("coupling"))
    cg.coupling = get_number(j.at("coupling"), "coulomb.coupling");
  if (j.contains("fugacity"))
    cg.fugacity = get_number(j.at("fugacity"), "coulomb.fugacity");
  if (j.contains("max_pairs"))
    cg.max_pairs = get_int(j.at("max_pairs"), "coulomb.max_pairs");
  if (cg.side < 2 || cg.side > 64) fail("coulomb.side", "must be in [2, 64]");
  if (!(cg.coupling > 0.0)) fail("coulomb.coupling", "must be positive");
  if (!(cg.fugacity >= 0.0)) fail("coulomb.fugacity", "must be >= 0");
  if (cg.max_pairs < 0) fail("coulomb.max_pairs", "must be >= 0");
}

void parse_threshold(const json& j, ThresholdSection& th) {
  expect_object(j, "threshold");
  reject_unknown(j, "threshold", {"p", "levels"});
  if (j.contains("p")) {
    const json& ps = j.at("p");
    if (!ps.is_array() || ps.empty())
      fail("threshold.p", "expected a non-empty array of rates");
    th.p.clear();
    for (const auto& v : ps) {
      const double p = get_number(v, "threshold.p entry");
      if (!(p >= 0.0) || !(p < 1.0))
        fail("threshold.p", "rates must lie in [0, 1)");
      th.p.push_back(p);
    }
  }
  if (j.contains("levels")) th.levels = get_int(j.at("levels"), "threshold.levels");
  if (th.levels < 0) fail("threshold.levels", "must be >= 0");
}

void parse_output(const json& j, OutputSection& out) {
  expect_object(j, "output");
  reject_unknown(j, "output", {"path", "format"});
  if (j.contains("path")) out.path = get_string(j.at("path"), "output.path");
  if (j.contains("format"))
    out.format = get_string(j.at("format"), "output.format");
  if (out.format != "csv" && out.format != "json")
    fail("output.format", "must be \"csv\" or \"json\"");
}

json parse_override_value(const std::string& text) {
  const json parsed = json::parse(text, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  return json(text);  // bare strings pass through
}

void apply_override(json& root, const std::string& expr) {
  const auto eq = expr.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must have the form key.path=value: " + expr);
  const std::string path = expr.substr(0, eq);
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(
        start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty())
      throw ConfigError("override has an empty path segment: " + expr);
    if (dot == std::string::npos) {
      (*node)[part] = parse_override_value(expr.substr(eq + 1));
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

ExperimentConfig parse_document(json doc,
                                std::span<const std::string> overrides) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  for (const std::string& o : overrides) apply_override(doc, o);
  reject_unknown(doc, "",
                 {"noise", "grid", "pulses", "rg", "scan", "mc", "coulomb",
                  "threshold", "output"});

  ExperimentConfig cfg;
  if (doc.contains("noise")) parse_noise(doc.at("noise"), cfg.noise);
  if (doc.contains("grid")) parse_grid(doc.at("grid"), cfg.grid);
  if (doc.contains("pulses")) parse_pulses(doc.at("pulses"), cfg.pulses);
  if (doc.contains("rg")) parse_rg(doc.at("rg"), cfg.rg);
  if (doc.contains("scan")) parse_scan(doc.at("scan"), cfg.scan);
  if (doc.contains("mc")) parse_mc(doc.at("mc"), cfg.mc);
  if (doc.contains("coulomb")) parse_coulomb(doc.at("coulomb"), cfg.coulomb);
  if (doc.contains("threshold"))
    parse_threshold(doc.at("threshold"), cfg.threshold);
  if (doc.contains("output")) parse_output(doc.at("output"), cfg.output);

  // cross-section checks, fail-fast before any computation
  try {
    cfg.pulse_sequence();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config key pulses.schedule: ") + e.what());
  }
  return cfg;
}

}  // namespace

ExperimentConfig load_config(const std::string& path,
                             std::span<const std::string> overrides) {
  if (path.empty()) return parse_document(json::object(), overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config_text(buf.str(), overrides);
}

ExperimentConfig load_config_text(const std::string& text,
                                  std::span<const std::string> overrides) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded())
    throw ConfigError("config is not valid JSON");
  return parse_document(std::move(doc), overrides);
}

std::string noise_model_json(const NoiseModel& model) {
  json delta, lambda;
  for (Channel c : kChannels) {
    delta[std::string(channel_name(c))] = model.bath.delta[c];
    lambda[std::string(channel_name(c))] = model.lambda[c];
  }
  json g = json::array(), h = json::array();
  for (int r = 0; r < 3; ++r) {
    g.push_back(json(model.beta_g[r]));
    h.push_back(json(model.beta_h[r]));
  }
  const json j{{"noise",
                {{"z", model.bath.z},
                 {"v", model.bath.v},
                 {"cutoff", model.bath.cutoff},
                 {"delta", delta},
                 {"lambda", lambda},
                 {"beta_g", g},
                 {"beta_h", h}}}};
  return j.dump(2) + "\n";
}

std::string config_key_reference() {
  return
      "config keys:\n"
      "  noise.z, noise.v, noise.cutoff, noise.delta.{x,y,z},\n"
      "  noise.lambda.{x,y,z}, noise.beta_g (3x3), noise.beta_h (3x3)\n"
      "  grid.delta_t, grid.n_cycles, grid.n_qubits, grid.comp_dim\n"
      "  pulses.n, pulses.schedule\n"
      "  rg.ell_max, rg.step, rg.kind (beta|kt), rg.x0, rg.y0\n"
      "  scan.sizes, scan.channel\n"
      "  mc.samples, mc.sweeps, mc.seed\n"
      "  coulomb.side, coulomb.coupling, coulomb.fugacity, coulomb.max_pairs\n"
      "  threshold.p, threshold.levels\n"
      "  output.path, output.format (csv|json)\n";
}

}  // namespace resilience
