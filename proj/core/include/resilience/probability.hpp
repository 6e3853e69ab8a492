#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resilience/channel.hpp"
#include "resilience/hypercube.hpp"

namespace resilience {

// m-error probability split into the binomial term and the leading
// correlated-pair correction.
struct PmBreakdown {
  int m = 0;
  double stochastic = 0.0;
  double pair_correction = 0.0;
  double ratio = 0.0;  // pair_correction / stochastic (0 when stochastic is 0)
};

// C(NR, m) eps_alpha^m (1 - sum eps)^(NR - m), computed in log space:
// exactly m cells suffer an alpha error, every other cell stays clean.
double stochastic_pm(const ErrorRates& rates, Channel alpha, int n_cycles,
                     int n_qubits, int m);

// Same with the total rate: exactly m cells suffer an error of any type.
// This distribution sums to 1 over m.
double stochastic_pm_total(const ErrorRates& rates, int n_cycles, int n_qubits,
                           int m);

// Pair kernel evaluated at physical cell-center separations.
using PairKernel = std::function<double(std::span<const double> dx, double dt)>;

// Sum of the kernel over ordered pairs of distinct hypercubes, cell centers
// with periodic minimum-image separations. Evaluated via the translation
// invariance of the separation-dependent summand: V * sum over nonzero
// separation classes. n_qubits must be a perfect comp_dim-th power and
// N * R <= 1e6.
double correction_pair_sum(const GridSpec& grid, const PairKernel& f);

struct ScalePoint {
  double size;
  double value;
};

struct SlopeFit {
  double slope = 0.0;
  double std_err = 0.0;
};

// Least-squares slope of log(value) vs log(size), discarding the smallest
// size. Needs >= 4 points, all positive.
SlopeFit fit_scaling_exponent(std::span<const ScalePoint> points);

// Stochastic term plus the one-correlated-pair correction, truncated at
// m <= 4 insertions; remaining cells enter only through the (1 - sum eps)
// normalization.
PmBreakdown evaluate_pm(const GridSpec& grid, const ErrorRates& rates,
                        Channel alpha, const PairKernel& f, int m);

struct ScanSpec {
  Correlator correlator;
  double lambda_star = 0.1;
  ErrorRates rates;
  Channel channel = Channel::Z;
  double delta_t = 1.0;
  int comp_dim = 1;
  std::vector<int> sizes;
};

struct ScanRow {
  int size = 0;
  double sum = 0.0;    // per-cell scaling-weighted pair sum
  double ratio = 0.0;  // m = 2 pair-to-stochastic ratio, unweighted kernel
};

struct ScanResult {
  std::vector<ScanRow> rows;
  SlopeFit fit;
  std::string behavior;  // "power-law", "logarithmic", or "bounded"
};

// Pair sums over dyadic L x L^D grids. The fitted `sum` column weights each
// ordered pair by its scaling volume |separation|^(D+z); with that measure the
// log-log slope reads off twice the flow exponent D + z - 2 delta, growth is
// logarithmic at marginality, and the sum saturates for an irrelevant flow.
// The unweighted cell sum saturates for any kernel decaying faster than the
// grid dimension and cannot distinguish these regimes.
ScanResult scaling_scan(const ScanSpec& spec);

}  // namespace resilience
