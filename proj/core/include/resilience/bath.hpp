#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "resilience/channel.hpp"

namespace resilience {

// Gaussian environment: dynamical exponent z, wave velocity v, UV cutoff, and
// per-channel scaling dimensions. z == 0 selects the instantaneous-interaction
// mode, in which correlators carry no time dependence.
struct BathSpec {
  double z = 1.0;
  double v = 1.0;
  double cutoff = 1.0;
  PerChannel delta{};

  bool instantaneous() const { return z == 0.0; }
  void validate() const;  // throws std::invalid_argument
};

// Bare couplings plus the beta-function coefficient tables. The tables are
// environment-specific inputs and default to zero (no renormalization).
struct NoiseModel {
  BathSpec bath{};
  PerChannel lambda{};
  // quadratic term of channel a couples the two complementary channels:
  // sum over (b, c) distinct and != a of beta_g[b][c] * lambda_b * lambda_c
  std::array<std::array<double, 3>, 3> beta_g{};
  // cubic term: sum over b of beta_h[a][b] * lambda_a * lambda_b^2
  std::array<std::array<double, 3>, 3> beta_h{};

  void validate() const;
};

enum class CorrelatorKind { PowerLaw, Constant, UserTable };

// Two-point function family in cutoff units (general v, cutoff are handled by
// rescaling inputs). PowerLaw is (1 + |x|^2 + |t|^(2/z))^(-delta): smooth at
// the origin, equal to 1 there, with the |x|^(-2 delta), |t|^(-2 delta / z)
// tails.
struct Correlator {
  CorrelatorKind kind = CorrelatorKind::PowerLaw;
  double delta = 0.0;
  double z = 1.0;
  std::function<double(double, double)> table;  // UserTable: (|x|, t) -> value
};

inline Correlator power_law_correlator(double delta, double z) {
  return Correlator{CorrelatorKind::PowerLaw, delta, z, {}};
}

inline Correlator constant_correlator() {
  return Correlator{CorrelatorKind::Constant, 0.0, 1.0, {}};
}

// C(x, t); even in t and in each component of x. In z == 0 mode t must be 0.
double two_point(const Correlator& c, std::span<const double> x, double t);
double two_point(const Correlator& c, double x, double t);

// (2n-1)!! perfect matchings of n_points = 2n points
std::uint64_t perfect_matching_count(std::size_t n_points);

namespace detail {

template <class PairValue>
double wick_sum(const std::vector<int>& idx, const PairValue& pv) {
  const std::size_t n = idx.size();
  if (n == 0) return 1.0;
  double total = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<int> rest;
    rest.reserve(n - 2);
    for (std::size_t j = 1; j < n; ++j) {
      if (j != k) rest.push_back(idx[j]);
    }
    total += pv(idx[0], idx[k]) * wick_sum(rest, pv);
  }
  return total;
}

}  // namespace detail

// Sum over all perfect matchings of products of pair values; exact for
// Gaussian fields. pair_fn is called on pairs of entries of `points`.
// Capped at 12 points ((2n-1)!! enumeration).
template <class Point, class PairFn>
double wick_expand(PairFn&& pair_fn, std::span<const Point> points) {
  if (points.size() % 2 != 0)
    throw std::invalid_argument("wick_expand: odd number of points");
  if (points.size() > 12)
    throw std::invalid_argument("wick_expand: more than 6 pairs");
  if (points.empty()) return 1.0;
  std::vector<int> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto pv = [&](int i, int j) { return pair_fn(points[i], points[j]); };
  return detail::wick_sum(idx, pv);
}

}  // namespace resilience
