#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

#include "resilience/errors.hpp"
#include "resilience/probability.hpp"

using namespace resilience;

TEST_SUITE_BEGIN("probability");

namespace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigInt big_binomial(int n, int m) {
  BigInt num = 1, den = 1;
  for (int k = 0; k < m; ++k) {
    num *= n - k;
    den *= k + 1;
  }
  return num / den;
}

Rational rational_pow(const Rational& base, int e) {
  Rational out = 1;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

// exact C(cells, m) a^m (1 - total)^(cells - m)
Rational exact_pm(const Rational& a, const Rational& total, int cells, int m) {
  return Rational(big_binomial(cells, m)) * rational_pow(a, m) *
         rational_pow(1 - total, cells - m);
}

ErrorRates test_rates() {
  PerChannel eps;
  eps.x = 0.02;
  eps.y = 0.01;
  eps.z = 0.03;
  return make_error_rates(eps, PerChannel{});
}

PairKernel constant_kernel(double c) {
  return [c](std::span<const double>, double) { return c; };
}

GridSpec plain_grid(int n_cycles, int n_qubits, int comp_dim = 1) {
  GridSpec g;
  g.n_cycles = n_cycles;
  g.n_qubits = n_qubits;
  g.comp_dim = comp_dim;
  g.delta_t = 1.0;
  g.spacing = 1.0;
  return g;
}

}  // namespace

TEST_CASE("stochastic_pm noiseless and single-cell limits") {
  const ErrorRates none = make_error_rates(PerChannel{}, PerChannel{});
  CHECK(stochastic_pm(none, Channel::X, 4, 5, 0) == 1.0);
  CHECK(stochastic_pm(none, Channel::X, 4, 5, 3) == 0.0);

  PerChannel eps;
  eps.x = 0.1;
  const ErrorRates single = make_error_rates(eps, PerChannel{});
  CHECK(stochastic_pm(single, Channel::X, 1, 1, 1) == doctest::Approx(0.1));
  CHECK(stochastic_pm(single, Channel::X, 1, 1, 0) == doctest::Approx(0.9));

  CHECK_THROWS_AS(stochastic_pm(single, Channel::X, 1, 1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(stochastic_pm(single, Channel::X, 1, 1, -1),
                  std::invalid_argument);
}

TEST_CASE("stochastic_pm against the exact rational oracle") {
  const ErrorRates rates = test_rates();
  const Rational ax(2, 100), ay(1, 100), az(3, 100);
  const Rational total = ax + ay + az;

  for (int cells : {20, 64}) {
    const int nr = cells;  // N = cells, R = 1
    // per-channel values, m-sum identity, and the total-count normalization
    Rational chan_sum = 0;
    double chan_sum_d = 0.0, total_sum_d = 0.0;
    for (int m = 0; m <= nr; ++m) {
      const Rational exact = exact_pm(ax, total, cells, m);
      const double got = stochastic_pm(rates, Channel::X, nr, 1, m);
      const double exact_d = exact.convert_to<double>();
      if (exact_d > 0.0) CHECK(std::abs(got - exact_d) / exact_d < 1e-9);
      chan_sum += exact;
      chan_sum_d += got;

      const Rational exact_total = exact_pm(total, total, cells, m);
      const double got_total = stochastic_pm_total(rates, nr, 1, m);
      const double exact_total_d = exact_total.convert_to<double>();
      if (exact_total_d > 0.0)
        CHECK(std::abs(got_total - exact_total_d) / exact_total_d < 1e-9);
      total_sum_d += got_total;
    }
    // the total-count distribution is normalized ...
    CHECK(std::abs(total_sum_d - 1.0) < 1e-12);
    // ... while the per-channel family sums to (1 - sum_{b != a} eps_b)^NR
    const Rational chan_expected = rational_pow(1 - (ay + az), cells);
    CHECK(chan_sum == chan_expected);
    CHECK(std::abs(chan_sum_d - chan_expected.convert_to<double>()) < 1e-12);
  }
}

TEST_CASE("correction_pair_sum basics") {
  CHECK(correction_pair_sum(plain_grid(8, 8), constant_kernel(0.0)) == 0.0);
  // two cells: both ordered pairs
  CHECK(correction_pair_sum(plain_grid(2, 1), constant_kernel(0.7)) ==
        doctest::Approx(1.4).epsilon(1e-14));

  CHECK_THROWS_AS(correction_pair_sum(plain_grid(1, 5, 2), constant_kernel(1)),
                  std::invalid_argument);  // 5 is not a square
  CHECK_THROWS_AS(
      correction_pair_sum(plain_grid(1024, 1024), constant_kernel(1)),
      std::invalid_argument);  // cell budget
}

TEST_CASE("correction_pair_sum equals the brute-force pairwise oracle") {
  const auto c = power_law_correlator(0.8, 1.0);
  PairKernel kernel = [&](std::span<const double> dx, double dt) {
    return pair_correlator_F(c, 0.1, 1.0, 0.01, dx, dt);
  };

  auto brute_force = [&](const GridSpec& g, int side) {
    // direct double loop over ordered cell pairs with minimum-image wrapping
    auto wrap = [](int k, int n) {
      int d = k % n;
      if (d < 0) d += n;
      return 2 * d > n ? d - n : d;
    };
    const int dim = g.comp_dim;
    double acc = 0.0;
    const std::int64_t cells = g.cells();
    for (std::int64_t i = 0; i < cells; ++i) {
      for (std::int64_t j = 0; j < cells; ++j) {
        if (i == j) continue;
        const int ti = static_cast<int>(i / g.n_qubits);
        const int tj = static_cast<int>(j / g.n_qubits);
        int si = static_cast<int>(i % g.n_qubits);
        int sj = static_cast<int>(j % g.n_qubits);
        std::vector<double> dx(dim);
        for (int d = 0; d < dim; ++d) {
          dx[d] = g.spacing * wrap(sj % side - si % side, side);
          si /= side;
          sj /= side;
        }
        acc += kernel(dx, g.delta_t * wrap(tj - ti, g.n_cycles));
      }
    }
    return acc;
  };

  const auto g1 = plain_grid(6, 5, 1);
  CHECK(correction_pair_sum(g1, kernel) ==
        doctest::Approx(brute_force(g1, 5)).epsilon(1e-12));
  const auto g2 = plain_grid(3, 16, 2);
  CHECK(correction_pair_sum(g2, kernel) ==
        doctest::Approx(brute_force(g2, 4)).epsilon(1e-12));
}

TEST_CASE("fit_scaling_exponent") {
  std::vector<ScalePoint> cubic, flat;
  for (double L : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    cubic.push_back({L, L * L * L});
    flat.push_back({L, 7.0});
  }
  const auto f1 = fit_scaling_exponent(cubic);
  CHECK(std::abs(f1.slope - 3.0) < 1e-10);
  CHECK(f1.std_err < 1e-10);
  const auto f2 = fit_scaling_exponent(flat);
  CHECK(std::abs(f2.slope) < 1e-12);

  std::vector<ScalePoint> few{{8, 1}, {16, 2}, {32, 3}};
  CHECK_THROWS_AS(fit_scaling_exponent(few), std::invalid_argument);
  std::vector<ScalePoint> neg{{8, 1}, {16, -2}, {32, 3}, {64, 4}};
  CHECK_THROWS_AS(fit_scaling_exponent(neg), std::invalid_argument);
}

TEST_CASE("evaluate_pm reduces to the stochastic form and matches the "
          "two-cell hand count") {
  const ErrorRates rates = test_rates();
  const auto g = plain_grid(4, 4);
  const auto zero = evaluate_pm(g, rates, Channel::Z, constant_kernel(0.0), 2);
  CHECK(zero.pair_correction == 0.0);
  CHECK(zero.ratio == 0.0);
  CHECK(zero.stochastic ==
        doctest::Approx(stochastic_pm(rates, Channel::Z, 4, 4, 2)));

  // N = 2, R = 1, m = 2, constant kernel c: P2 = p2 (1 + c), one placement
  PerChannel eps;
  eps.z = 0.1;
  const ErrorRates single = make_error_rates(eps, PerChannel{});
  const double c = 0.25;
  const auto two =
      evaluate_pm(plain_grid(2, 1), single, Channel::Z, constant_kernel(c), 2);
  const double p2 = 0.1 * 0.1;  // eps^m (1 - eps)^(NR - m), NR = m = 2
  CHECK(two.stochastic == doctest::Approx(p2));
  CHECK(two.pair_correction == doctest::Approx(p2 * c).epsilon(1e-12));
  CHECK(two.ratio == doctest::Approx(c).epsilon(1e-12));

  CHECK_THROWS_AS(evaluate_pm(g, rates, Channel::Z, constant_kernel(0.0), 5),
                  std::invalid_argument);
}

TEST_CASE("irrelevant kernel: pair-to-stochastic ratio falls with system size") {
  const auto c = power_law_correlator(1.5, 1.0);
  PerChannel eps;
  eps.z = 1e-3;
  const ErrorRates rates = make_error_rates(eps, PerChannel{});
  PairKernel kernel = [&](std::span<const double> dx, double dt) {
    return pair_correlator_F(c, 0.1, 1.0, eps.z, dx, dt);
  };
  double prev = 1e300;
  for (int L : {4, 8, 16, 32}) {
    const auto pm = evaluate_pm(plain_grid(L, L), rates, Channel::Z, kernel, 2);
    CHECK(pm.ratio < prev);
    prev = pm.ratio;
  }
}

TEST_CASE("scaling_scan emits rows, a fit, and a behavior tag") {
  PerChannel eps;
  eps.z = 0.01;
  ScanSpec spec;
  spec.correlator = power_law_correlator(1.5, 1.0);
  spec.lambda_star = 0.1;
  spec.rates = make_error_rates(eps, PerChannel{});
  spec.channel = Channel::Z;
  spec.sizes = {8, 16, 32, 64};
  const auto res = scaling_scan(spec);
  REQUIRE(res.rows.size() == 4);
  CHECK(res.rows[0].size == 8);
  CHECK(res.rows.back().sum > 0.0);
  // irrelevant kernel: bounded sums and shrinking ratios
  CHECK(res.behavior == "bounded");
  CHECK(res.rows.back().ratio < res.rows.front().ratio);

  spec.sizes = {8, 16};
  CHECK_THROWS_AS(scaling_scan(spec), std::invalid_argument);
}

TEST_SUITE_END();
