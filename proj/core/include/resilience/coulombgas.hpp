#pragma once

#include <cstdint>
#include <vector>

#include "resilience/rng.hpp"

namespace resilience {

// Periodic side x side lattice of unit charges with the logarithmic pair
// interaction -K sum q_i q_j ln r_ij (minimum-image distances, r >= 1) and
// fugacity y per charge. max_pairs > 0 restricts the sampler to a sector that
// exact enumeration can cover; 0 means unrestricted.
struct LatticeSpec {
  int side = 4;
  double coupling = 1.0;  // K
  double fugacity = 0.0;  // y
  int max_pairs = 0;

  int sites() const { return side * side; }
  void validate() const;
};

// Neutral configuration: at most one charge per site, equal +/- counts.
struct ChargeConfig {
  std::vector<std::int8_t> charge;  // -1 / 0 / +1 per site
  int n_plus = 0;
  int n_minus = 0;

  static ChargeConfig empty(int side);
  int net() const { return n_plus - n_minus; }
  void set(int site, int q);  // keeps the counts in step
};

double min_image_r2(int side, int site_a, int site_b);

// -K sum_{i<j} q_i q_j ln r_ij; empty configuration has energy 0.
double energy(const LatticeSpec& spec, const ChargeConfig& config);

// mean squared minimum-image separation over all (+,-) cross pairs
double mean_square_separation(const LatticeSpec& spec,
                              const ChargeConfig& config);

enum class MoveKind { Insert, Delete, Displace };

// move-mix probabilities used by the sampler and its proposal densities
inline constexpr double kInsertProb = 0.25;
inline constexpr double kDeleteProb = 0.25;
inline constexpr double kDisplaceProb = 0.5;

struct MoveProposal {
  MoveKind kind = MoveKind::Insert;
  bool valid = false;
  int site_a = -1;  // insert/delete: + site; displace: source
  int site_b = -1;  // insert/delete: - site; displace: target
  double delta_energy = 0.0;
  double log_weight_ratio = 0.0;  // ln w(B)/w(A), fugacity factors included
  double log_fwd = 0.0;           // ln g(A -> B), move-mix factor included
  double log_rev = 0.0;           // ln g(B -> A)
  double acceptance = 0.0;        // min(1, exp(lwr + rev - fwd))
};

// Draws a concrete proposal of the given kind from the configuration.
// valid == false (no candidate: delete on vacuum, insert at the sector cap)
// counts as a rejected attempt.
MoveProposal propose_move(const LatticeSpec& spec, const ChargeConfig& config,
                          MoveKind kind, Rng& rng);

void apply_move(ChargeConfig& config, const MoveProposal& move);

struct GasObservables {
  double mean_pairs = 0.0;
  double stderr_pairs = 0.0;
  double mean_r2 = 0.0;  // conditional on at least one pair being present
  double stderr_r2 = 0.0;
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
};

struct GasSample {
  std::uint64_t sweep;
  int pairs;
  double r2;
};

struct McOptions {
  std::uint64_t burn_in = 0;  // sweeps discarded before measuring
  int batches = 20;
  bool record_series = false;
};

struct McResult {
  GasObservables obs;
  std::vector<GasSample> series;
};

// Metropolis sampling with insert / delete / displace moves, one proposal per
// site per sweep. Deterministic for a fixed seed; errors are batch means.
McResult metropolis_run(const LatticeSpec& spec, std::uint64_t sweeps,
                        std::uint64_t seed, const McOptions& opt = {});

struct ExactSummary {
  double partition = 0.0;
  double mean_pairs = 0.0;
  double mean_r2 = 0.0;  // conditional on >= 1 pair
};

// Exact sum over all neutral configurations with at most max_pairs dipole
// pairs (max_pairs <= 2, side <= 6), Boltzmann weight y^#charges e^(-E).
ExactSummary exact_partition(const LatticeSpec& spec, int max_pairs);

}  // namespace resilience
