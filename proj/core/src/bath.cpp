#include "resilience/bath.hpp"

#include <cmath>

namespace resilience {

void BathSpec::validate() const {
  if (!(v > 0.0)) throw std::invalid_argument("v must be positive");
  if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
  if (!(z >= 0.0)) throw std::invalid_argument("z must be non-negative");
  for (Channel c : kChannels) {
    if (!(delta[c] >= 0.0))
      throw std::invalid_argument(std::string("delta.") +
                                  std::string(channel_name(c)) +
                                  " must be non-negative");
  }
}

void NoiseModel::validate() const {
  bath.validate();
  for (Channel c : kChannels) {
    if (!(lambda[c] >= 0.0))
      throw std::invalid_argument(std::string("lambda.") +
                                  std::string(channel_name(c)) +
                                  " must be non-negative");
  }
  for (const auto& row : beta_g)
    for (double v : row)
      if (!std::isfinite(v))
        throw std::invalid_argument("beta_g entries must be finite");
  for (const auto& row : beta_h)
    for (double v : row)
      if (!std::isfinite(v))
        throw std::invalid_argument("beta_h entries must be finite");
}

double two_point(const Correlator& c, std::span<const double> x, double t) {
  if (!(c.delta >= 0.0))
    throw std::invalid_argument("two_point: delta must be non-negative");
  if (!std::isfinite(t))
    throw std::invalid_argument("two_point: t must be finite");
  double x2 = 0.0;
  for (double xi : x) {
    if (!std::isfinite(xi))
      throw std::invalid_argument("two_point: x must be finite");
    x2 += xi * xi;
  }
  if (c.z == 0.0 && t != 0.0)
    throw std::invalid_argument(
        "two_point: z = 0 correlators are instantaneous; t must be 0");

  switch (c.kind) {
    case CorrelatorKind::Constant:
      return 1.0;
    case CorrelatorKind::UserTable:
      if (!c.table)
        throw std::invalid_argument("two_point: UserTable without a table");
      return c.table(std::sqrt(x2), t);
    case CorrelatorKind::PowerLaw: {
      double s = x2;
      if (t != 0.0) s += std::pow(std::abs(t), 2.0 / c.z);
      return std::pow(1.0 + s, -c.delta);
    }
  }
  throw std::invalid_argument("two_point: bad correlator kind");
}

double two_point(const Correlator& c, double x, double t) {
  return two_point(c, std::span<const double>(&x, 1), t);
}

std::uint64_t perfect_matching_count(std::size_t n_points) {
  if (n_points % 2 != 0)
    throw std::invalid_argument(
        "perfect_matching_count: odd number of points");
  std::uint64_t count = 1;
  for (std::size_t k = n_points; k > 1; k -= 2) count *= k - 1;
  return count;
}

}  // namespace resilience
