#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "resilience/bath.hpp"
#include "resilience/rng.hpp"

using namespace resilience;

TEST_SUITE_BEGIN("bath");

TEST_CASE("two_point power law basics") {
  const auto c = power_law_correlator(0.7, 1.0);
  CHECK(two_point(c, 0.0, 0.0) == 1.0);  // cutoff-regularized maximum

  const auto flat = power_law_correlator(0.0, 1.0);
  CHECK(two_point(flat, 3.0, -2.0) == 1.0);
  CHECK(two_point(flat, 123.0, 7.5) == 1.0);

  CHECK(two_point(constant_correlator(), 5.0, 9.0) == 1.0);
}

TEST_CASE("two_point asymptotic ratio pins the 2-delta tail") {
  // delta = 1, z = 1: C(2x)/C(x) -> 2^-2 at large |x|
  const auto c = power_law_correlator(1.0, 1.0);
  const double ratio = two_point(c, 200.0, 0.0) / two_point(c, 100.0, 0.0);
  CHECK(std::abs(ratio - 0.25) < 1e-3);

  // time tail with z = 2: C ~ |t|^(-2 delta / z) = |t|^(-1)
  const auto c2 = power_law_correlator(1.0, 2.0);
  const double tr = two_point(c2, 0.0, 4000.0) / two_point(c2, 0.0, 2000.0);
  CHECK(tr == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("two_point evenness, positivity, monotonicity") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double delta = rng.next_real(0.0, 2.5);
    const double z = rng.next_real(0.2, 3.0);
    const auto c = power_law_correlator(delta, z);
    const std::array<double, 2> x{rng.next_real(-20, 20),
                                  rng.next_real(-20, 20)};
    const std::array<double, 2> mx{-x[0], -x[1]};
    const double t = rng.next_real(-20, 20);
    const double v = two_point(c, x, t);
    CHECK(v > 0.0);
    CHECK(v == two_point(c, mx, -t));
    // scaling up |x| or |t| never increases the value
    const std::array<double, 2> x2{1.5 * x[0], 1.5 * x[1]};
    CHECK(two_point(c, x2, t) <= v);
    CHECK(two_point(c, x, 1.5 * t) <= v + 1e-15);
  }
}

TEST_CASE("two_point input validation") {
  auto c = power_law_correlator(1.0, 1.0);
  c.delta = -0.5;
  CHECK_THROWS_AS(two_point(c, 1.0, 0.0), std::invalid_argument);

  const auto akp = power_law_correlator(1.0, 0.0);
  CHECK_THROWS_AS(two_point(akp, 1.0, 0.5), std::invalid_argument);
  CHECK(two_point(akp, 3.0, 0.0) == doctest::Approx(1.0 / 10.0));
}

TEST_CASE("user table correlator is honored") {
  Correlator c;
  c.kind = CorrelatorKind::UserTable;
  c.table = [](double r, double t) { return r == 0.0 && t == 0.0 ? 1.0 : 0.0; };
  CHECK(two_point(c, 0.0, 0.0) == 1.0);
  CHECK(two_point(c, 2.0, 0.0) == 0.0);
}

TEST_CASE("bath and noise model validation") {
  BathSpec b;
  b.v = 0.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b = BathSpec{};
  b.delta.y = -1.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);

  NoiseModel m;
  m.lambda.x = -0.1;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = NoiseModel{};
  m.beta_h[1][2] = std::nan("");
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

namespace {
struct Pt {
  double v;
};
}  // namespace

TEST_CASE("wick expansion over coincident points") {
  // pair value c for identical points; (2n-1)!! c^n, exact for c = 0.5
  auto pair = [](const Pt&, const Pt&) { return 0.5; };
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<Pt> pts(2 * n, Pt{0.0});
    const double expected =
        static_cast<double>(perfect_matching_count(2 * n)) *
        std::pow(0.5, static_cast<double>(n));
    CHECK(wick_expand(pair, std::span<const Pt>(pts)) == expected);
  }
  CHECK(perfect_matching_count(2) == 1);
  CHECK(perfect_matching_count(4) == 3);
  CHECK(perfect_matching_count(6) == 15);
  CHECK(perfect_matching_count(12) == 10395);
}

TEST_CASE("wick expansion is invariant under point permutations") {
  Rng rng(11);
  std::vector<Pt> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(Pt{rng.next_real(0.1, 2.0)});
  auto pair = [](const Pt& a, const Pt& b) { return a.v * b.v + 0.3; };
  const double base = wick_expand(pair, std::span<const Pt>(pts));
  for (int trial = 0; trial < 20; ++trial) {
    // Fisher-Yates with the test rng
    auto shuffled = pts;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.next_index(i)]);
    const double v = wick_expand(pair, std::span<const Pt>(shuffled));
    CHECK(v == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("wick expansion rejects bad inputs") {
  auto pair = [](const Pt&, const Pt&) { return 1.0; };
  std::vector<Pt> odd(3, Pt{0.0});
  CHECK_THROWS_AS(wick_expand(pair, std::span<const Pt>(odd)),
                  std::invalid_argument);
  std::vector<Pt> big(14, Pt{0.0});
  CHECK_THROWS_AS(wick_expand(pair, std::span<const Pt>(big)),
                  std::invalid_argument);
}

TEST_SUITE_END();
