#include "resilience/coulombgas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace resilience {

void LatticeSpec::validate() const {
  if (side < 2 || side > 64)
    throw std::invalid_argument("side must be in [2, 64]");
  if (!(coupling > 0.0))
    throw std::invalid_argument("coupling must be positive");
  if (!(fugacity >= 0.0))
    throw std::invalid_argument("fugacity must be non-negative");
  if (max_pairs < 0)
    throw std::invalid_argument("max_pairs must be >= 0");
}

ChargeConfig ChargeConfig::empty(int side) {
  ChargeConfig c;
  c.charge.assign(static_cast<std::size_t>(side) * side, 0);
  return c;
}

void ChargeConfig::set(int site, int q) {
  const int old = charge[static_cast<std::size_t>(site)];
  if (old == q) return;
  if (old > 0) --n_plus;
  if (old < 0) --n_minus;
  if (q > 0) ++n_plus;
  if (q < 0) ++n_minus;
  charge[static_cast<std::size_t>(site)] = static_cast<std::int8_t>(q);
}

double min_image_r2(int side, int site_a, int site_b) {
  int dx = site_a % side - site_b % side;
  int dy = site_a / side - site_b / side;
  if (2 * dx > side) dx -= side;
  if (2 * dx < -side) dx += side;
  if (2 * dy > side) dy -= side;
  if (2 * dy < -side) dy += side;
  return static_cast<double>(dx) * dx + static_cast<double>(dy) * dy;
}

namespace {

double log_min_image_r(int side, int a, int b) {
  return 0.5 * std::log(min_image_r2(side, a, b));
}

void check_config(const LatticeSpec& spec, const ChargeConfig& config) {
  if (config.charge.size() != static_cast<std::size_t>(spec.sites()))
    throw std::invalid_argument("configuration size does not match lattice");
  if (config.net() != 0)
    throw std::invalid_argument("configuration must be charge neutral");
}

std::vector<int> occupied_sites(const ChargeConfig& config, int sign) {
  std::vector<int> out;
  for (std::size_t s = 0; s < config.charge.size(); ++s)
    if ((sign > 0 && config.charge[s] > 0) ||
        (sign < 0 && config.charge[s] < 0))
      out.push_back(static_cast<int>(s));
  return out;
}

}  // namespace

double energy(const LatticeSpec& spec, const ChargeConfig& config) {
  spec.validate();
  check_config(spec, config);
  std::vector<int> sites;
  for (std::size_t s = 0; s < config.charge.size(); ++s)
    if (config.charge[s] != 0) sites.push_back(static_cast<int>(s));
  double e = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      e -= spec.coupling * config.charge[sites[i]] * config.charge[sites[j]] *
           log_min_image_r(spec.side, sites[i], sites[j]);
  return e;
}

double mean_square_separation(const LatticeSpec& spec,
                              const ChargeConfig& config) {
  check_config(spec, config);
  if (config.n_plus == 0) return 0.0;
  const auto plus = occupied_sites(config, +1);
  const auto minus = occupied_sites(config, -1);
  double acc = 0.0;
  for (int a : plus)
    for (int b : minus) acc += min_image_r2(spec.side, a, b);
  return acc / (static_cast<double>(plus.size()) * minus.size());
}

namespace {

// Mutable sampler state with O(1) membership updates. pos[site] indexes the
// site inside whichever of plus / minus / empty currently holds it.
struct GasState {
  LatticeSpec spec;
  ChargeConfig cfg;
  std::vector<int> plus, minus, empty_list;
  std::vector<int> pos;

  explicit GasState(const LatticeSpec& s, const ChargeConfig& c)
      : spec(s), cfg(c), pos(c.charge.size(), -1) {
    for (std::size_t site = 0; site < cfg.charge.size(); ++site) {
      auto& list = cfg.charge[site] > 0   ? plus
                   : cfg.charge[site] < 0 ? minus
                                          : empty_list;
      pos[site] = static_cast<int>(list.size());
      list.push_back(static_cast<int>(site));
    }
  }

  std::vector<int>& list_of(int site) {
    return cfg.charge[static_cast<std::size_t>(site)] > 0   ? plus
           : cfg.charge[static_cast<std::size_t>(site)] < 0 ? minus
                                                            : empty_list;
  }

  void move_site(int site, int new_charge) {
    auto& from = list_of(site);
    const int i = pos[site];
    from[i] = from.back();
    pos[from[i]] = i;
    from.pop_back();
    cfg.set(site, new_charge);
    auto& to = list_of(site);
    pos[site] = static_cast<int>(to.size());
    to.push_back(site);
  }

  // sum of q_i ln r(i, site) over charges, skipping up to two sites
  double field_at(int site, int skip1 = -1, int skip2 = -1) const {
    double acc = 0.0;
    for (int s : plus)
      if (s != skip1 && s != skip2) acc += log_min_image_r(spec.side, s, site);
    for (int s : minus)
      if (s != skip1 && s != skip2) acc -= log_min_image_r(spec.side, s, site);
    return acc;
  }

  MoveProposal propose(MoveKind kind, Rng& rng) const {
    MoveProposal mv;
    mv.kind = kind;
    const double log_y = std::log(spec.fugacity);
    const auto n_empty = static_cast<std::uint64_t>(empty_list.size());
    const int n_pairs = cfg.n_plus;

    switch (kind) {
      case MoveKind::Insert: {
        if (n_empty < 2) return mv;
        if (spec.max_pairs > 0 && n_pairs >= spec.max_pairs) return mv;
        const std::uint64_t i = rng.next_index(n_empty);
        std::uint64_t j = rng.next_index(n_empty - 1);
        if (j >= i) ++j;
        mv.site_a = empty_list[i];
        mv.site_b = empty_list[j];
        mv.valid = true;
        mv.delta_energy =
            -spec.coupling * (field_at(mv.site_a) - field_at(mv.site_b) -
                              log_min_image_r(spec.side, mv.site_a, mv.site_b));
        mv.log_weight_ratio = 2.0 * log_y - mv.delta_energy;
        mv.log_fwd = std::log(kInsertProb) -
                     std::log(static_cast<double>(n_empty)) -
                     std::log(static_cast<double>(n_empty - 1));
        mv.log_rev = std::log(kDeleteProb) -
                     std::log(static_cast<double>(n_pairs + 1)) * 2.0;
        break;
      }
      case MoveKind::Delete: {
        if (n_pairs == 0) return mv;
        mv.site_a = plus[rng.next_index(static_cast<std::uint64_t>(n_pairs))];
        mv.site_b = minus[rng.next_index(static_cast<std::uint64_t>(n_pairs))];
        mv.valid = true;
        mv.delta_energy =
            spec.coupling *
            (field_at(mv.site_a, mv.site_a, mv.site_b) -
             field_at(mv.site_b, mv.site_a, mv.site_b) -
             log_min_image_r(spec.side, mv.site_a, mv.site_b));
        mv.log_weight_ratio = -2.0 * log_y - mv.delta_energy;
        mv.log_fwd = std::log(kDeleteProb) -
                     std::log(static_cast<double>(n_pairs)) * 2.0;
        mv.log_rev = std::log(kInsertProb) -
                     std::log(static_cast<double>(n_empty + 2)) -
                     std::log(static_cast<double>(n_empty + 1));
        break;
      }
      case MoveKind::Displace: {
        const int n_charges = cfg.n_plus + cfg.n_minus;
        if (n_charges == 0 || n_empty == 0) return mv;
        const std::uint64_t c =
            rng.next_index(static_cast<std::uint64_t>(n_charges));
        mv.site_a = c < static_cast<std::uint64_t>(cfg.n_plus)
                        ? plus[c]
                        : minus[c - cfg.n_plus];
        mv.site_b = empty_list[rng.next_index(n_empty)];
        mv.valid = true;
        const int q = cfg.charge[static_cast<std::size_t>(mv.site_a)];
        mv.delta_energy =
            -spec.coupling * q *
            (field_at(mv.site_b, mv.site_a) - field_at(mv.site_a, mv.site_a));
        mv.log_weight_ratio = -mv.delta_energy;
        // empty count is unchanged, so the densities cancel
        mv.log_fwd = std::log(kDisplaceProb) -
                     std::log(static_cast<double>(n_charges)) -
                     std::log(static_cast<double>(n_empty));
        mv.log_rev = mv.log_fwd;
        break;
      }
    }
    if (mv.valid)
      mv.acceptance = std::min(
          1.0, std::exp(mv.log_weight_ratio + mv.log_rev - mv.log_fwd));
    return mv;
  }

  void apply(const MoveProposal& mv) {
    switch (mv.kind) {
      case MoveKind::Insert:
        move_site(mv.site_a, +1);
        move_site(mv.site_b, -1);
        break;
      case MoveKind::Delete:
        move_site(mv.site_a, 0);
        move_site(mv.site_b, 0);
        break;
      case MoveKind::Displace: {
        const int q = cfg.charge[static_cast<std::size_t>(mv.site_a)];
        move_site(mv.site_a, 0);
        move_site(mv.site_b, q);
        break;
      }
    }
  }

  double r2_mean() const {
    if (plus.empty()) return 0.0;
    double acc = 0.0;
    for (int a : plus)
      for (int b : minus) acc += min_image_r2(spec.side, a, b);
    return acc / (static_cast<double>(plus.size()) * minus.size());
  }
};

}  // namespace

MoveProposal propose_move(const LatticeSpec& spec, const ChargeConfig& config,
                          MoveKind kind, Rng& rng) {
  spec.validate();
  check_config(spec, config);
  return GasState(spec, config).propose(kind, rng);
}

void apply_move(ChargeConfig& config, const MoveProposal& move) {
  if (!move.valid) return;
  switch (move.kind) {
    case MoveKind::Insert:
      config.set(move.site_a, +1);
      config.set(move.site_b, -1);
      break;
    case MoveKind::Delete:
      config.set(move.site_a, 0);
      config.set(move.site_b, 0);
      break;
    case MoveKind::Displace: {
      const int q = config.charge[static_cast<std::size_t>(move.site_a)];
      config.set(move.site_a, 0);
      config.set(move.site_b, q);
      break;
    }
  }
}

McResult metropolis_run(const LatticeSpec& spec, std::uint64_t sweeps,
                        std::uint64_t seed, const McOptions& opt) {
  spec.validate();
  if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
  if (opt.batches < 2)
    throw std::invalid_argument("batches must be >= 2");

  GasState state(spec, ChargeConfig::empty(spec.side));
  Rng rng = Rng::stream(seed, 0);
  const int proposals_per_sweep = spec.sites();

  auto run_sweep = [&]() {
    std::uint64_t accepted = 0;
    for (int p = 0; p < proposals_per_sweep; ++p) {
      const double u = rng.next_double();
      const MoveKind kind = u < kInsertProb ? MoveKind::Insert
                            : u < kInsertProb + kDeleteProb
                                ? MoveKind::Delete
                                : MoveKind::Displace;
      const MoveProposal mv = state.propose(kind, rng);
      if (!mv.valid) continue;
      if (rng.next_double() < mv.acceptance) {
        state.apply(mv);
        ++accepted;
      }
    }
    return accepted;
  };

  for (std::uint64_t s = 0; s < opt.burn_in; ++s) run_sweep();

  const std::uint64_t batches = static_cast<std::uint64_t>(opt.batches);
  const std::uint64_t per_batch = std::max<std::uint64_t>(1, sweeps / batches);
  const std::uint64_t measured = per_batch * batches;

  McResult result;
  result.obs.seed = seed;
  if (opt.record_series) result.series.reserve(measured);

  std::vector<double> batch_pairs(batches, 0.0);
  std::vector<double> batch_r2(batches, 0.0);
  std::vector<std::uint64_t> batch_occupied(batches, 0);
  std::uint64_t total_accepted = 0;

  for (std::uint64_t s = 0; s < measured; ++s) {
    total_accepted += run_sweep();
    const std::uint64_t b = s / per_batch;
    const int pairs = state.cfg.n_plus;
    batch_pairs[b] += pairs;
    double r2 = 0.0;
    if (pairs > 0) {
      r2 = state.r2_mean();
      batch_r2[b] += r2;
      ++batch_occupied[b];
    }
    if (opt.record_series) result.series.push_back({s, pairs, r2});
  }

  auto batch_stats = [&](const std::vector<double>& sums,
                         const std::vector<std::uint64_t>* counts,
                         double& mean, double& err) {
    double total = 0.0, weight = 0.0;
    std::vector<double> means;
    for (std::uint64_t b = 0; b < batches; ++b) {
      const double cnt =
          counts ? static_cast<double>((*counts)[b]) : static_cast<double>(per_batch);
      if (cnt == 0.0) continue;
      total += sums[b];
      weight += cnt;
      means.push_back(sums[b] / cnt);
    }
    mean = weight > 0.0 ? total / weight : 0.0;
    if (means.size() > 1) {
      double var = 0.0;
      double bm = 0.0;
      for (double m : means) bm += m;
      bm /= static_cast<double>(means.size());
      for (double m : means) var += (m - bm) * (m - bm);
      err = std::sqrt(var / (means.size() * (means.size() - 1.0)));
    } else {
      err = 0.0;
    }
  };

  batch_stats(batch_pairs, nullptr, result.obs.mean_pairs,
              result.obs.stderr_pairs);
  batch_stats(batch_r2, &batch_occupied, result.obs.mean_r2,
              result.obs.stderr_r2);
  result.obs.acceptance_rate =
      static_cast<double>(total_accepted) /
      (static_cast<double>(measured) * proposals_per_sweep);
  return result;
}

ExactSummary exact_partition(const LatticeSpec& spec, int max_pairs) {
  spec.validate();
  if (spec.side > 6)
    throw std::invalid_argument("exact_partition: side must be <= 6");
  if (max_pairs < 0 || max_pairs > 2)
    throw std::invalid_argument("exact_partition: max_pairs must be <= 2");

  const int v = spec.sites();
  const double y = spec.fugacity;
  const double k = spec.coupling;

  double z = 1.0;  // vacuum
  double pairs_num = 0.0;
  double r2_num = 0.0, r2_den = 0.0;

  if (max_pairs >= 1 && y > 0.0) {
    const double y2 = y * y;
    for (int a = 0; a < v; ++a) {
      for (int b = 0; b < v; ++b) {
        if (b == a) continue;
        const double lr = log_min_image_r(spec.side, a, b);
        const double w = y2 * std::exp(-k * lr);
        z += w;
        pairs_num += w;
        r2_num += w * min_image_r2(spec.side, a, b);
        r2_den += w;
      }
    }
  }

  if (max_pairs >= 2 && y > 0.0) {
    const double y4 = y * y * y * y;
    // unordered plus pairs x unordered minus pairs, all four sites distinct
    for (int p1 = 0; p1 < v; ++p1) {
      for (int p2 = p1 + 1; p2 < v; ++p2) {
        for (int m1 = 0; m1 < v; ++m1) {
          if (m1 == p1 || m1 == p2) continue;
          for (int m2 = m1 + 1; m2 < v; ++m2) {
            if (m2 == p1 || m2 == p2) continue;
            const double e =
                -k * (log_min_image_r(spec.side, p1, p2) +
                      log_min_image_r(spec.side, m1, m2) -
                      log_min_image_r(spec.side, p1, m1) -
                      log_min_image_r(spec.side, p1, m2) -
                      log_min_image_r(spec.side, p2, m1) -
                      log_min_image_r(spec.side, p2, m2));
            const double w = y4 * std::exp(-e);
            z += w;
            pairs_num += 2.0 * w;
            const double r2 = 0.25 * (min_image_r2(spec.side, p1, m1) +
                                      min_image_r2(spec.side, p1, m2) +
                                      min_image_r2(spec.side, p2, m1) +
                                      min_image_r2(spec.side, p2, m2));
            r2_num += w * r2;
            r2_den += w;
          }
        }
      }
    }
  }

  ExactSummary out;
  out.partition = z;
  out.mean_pairs = pairs_num / z;
  out.mean_r2 = r2_den > 0.0 ? r2_num / r2_den : 0.0;
  return out;
}

}  // namespace resilience
