#include "resilience/probability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "resilience/errors.hpp"

namespace resilience {

namespace {

double log_binomial(std::int64_t n, std::int64_t m) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(m) + 1.0) -
         std::lgamma(static_cast<double>(n - m) + 1.0);
}

double binomial_pm(double p_one, double p_total, std::int64_t cells, int m) {
  // C(cells, m) p_one^m (1 - p_total)^(cells - m) in log space
  if (p_one == 0.0) return m == 0 ? std::pow(1.0 - p_total, cells) : 0.0;
  double logp = log_binomial(cells, m);
  if (m > 0) logp += m * std::log(p_one);
  logp += (cells - m) * std::log1p(-p_total);
  return std::exp(logp);
}

void check_pm_args(const ErrorRates& rates, int n_cycles, int n_qubits,
                   int m) {
  if (n_cycles < 1 || n_qubits < 1)
    throw std::invalid_argument("grid must have positive n_cycles, n_qubits");
  const std::int64_t cells =
      static_cast<std::int64_t>(n_cycles) * n_qubits;
  if (m < 0 || m > cells)
    throw std::invalid_argument("m out of range [0, N*R]");
  if (!(rates.eps.sum() < 1.0))
    throw ModelError("total error rate >= 1: outside the perturbative regime");
}

}  // namespace

double stochastic_pm(const ErrorRates& rates, Channel alpha, int n_cycles,
                     int n_qubits, int m) {
  check_pm_args(rates, n_cycles, n_qubits, m);
  const std::int64_t cells = static_cast<std::int64_t>(n_cycles) * n_qubits;
  return binomial_pm(rates.eps[alpha], rates.eps.sum(), cells, m);
}

double stochastic_pm_total(const ErrorRates& rates, int n_cycles,
                           int n_qubits, int m) {
  check_pm_args(rates, n_cycles, n_qubits, m);
  const std::int64_t cells = static_cast<std::int64_t>(n_cycles) * n_qubits;
  return binomial_pm(rates.eps.sum(), rates.eps.sum(), cells, m);
}

double correction_pair_sum(const GridSpec& grid, const PairKernel& f) {
  grid.validate();
  const std::int64_t cells = grid.cells();
  if (cells > 1'000'000)
    throw std::invalid_argument(
        "correction_pair_sum: cell budget exceeded (N*R <= 1e6)");

  const int dim = grid.comp_dim;
  const int side = static_cast<int>(
      std::lround(std::pow(static_cast<double>(grid.n_qubits), 1.0 / dim)));
  std::int64_t check = 1;
  for (int d = 0; d < dim; ++d) check *= side;
  if (check != grid.n_qubits) {
    std::ostringstream os;
    os << "correction_pair_sum: n_qubits = " << grid.n_qubits
       << " is not a perfect " << dim << "-th power";
    throw std::invalid_argument(os.str());
  }

  auto min_image = [](int k, int length) {
    return 2 * k > length ? k - length : k;
  };

  // translation invariance on the periodic grid: one pass over nonzero
  // separation classes, each shared by `cells` ordered pairs
  std::vector<int> sep(dim, 0);
  std::vector<double> dx(dim, 0.0);
  double acc = 0.0;
  for (int kt = 0; kt < grid.n_cycles; ++kt) {
    const double dt = grid.delta_t * min_image(kt, grid.n_cycles);
    bool done = false;
    std::fill(sep.begin(), sep.end(), 0);
    while (!done) {
      bool all_zero = kt == 0;
      for (int d = 0; d < dim && all_zero; ++d) all_zero = sep[d] == 0;
      if (!all_zero) {
        for (int d = 0; d < dim; ++d)
          dx[d] = grid.spacing * min_image(sep[d], side);
        acc += f(dx, dt);
      }
      // odometer over the spatial offsets
      int d = 0;
      while (d < dim && ++sep[d] == side) sep[d++] = 0;
      done = d == dim;
    }
  }
  return static_cast<double>(cells) * acc;
}

SlopeFit fit_scaling_exponent(std::span<const ScalePoint> points) {
  if (points.size() < 4)
    throw std::invalid_argument(
        "fit_scaling_exponent: need at least 4 sizes");
  std::vector<ScalePoint> pts(points.begin(), points.end());
  for (const auto& p : pts)
    if (!(p.size > 0.0) || !(p.value > 0.0))
      throw std::invalid_argument(
          "fit_scaling_exponent: sizes and values must be positive");
  std::sort(pts.begin(), pts.end(),
            [](const ScalePoint& a, const ScalePoint& b) {
              return a.size < b.size;
            });
  pts.erase(pts.begin());  // smallest size carries the worst lattice effects

  const std::size_t n = pts.size();
  double sx = 0.0, sy = 0.0;
  for (const auto& p : pts) {
    sx += std::log(p.size);
    sy += std::log(p.value);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    const double ex = std::log(p.size) - mx;
    sxx += ex * ex;
    sxy += ex * (std::log(p.value) - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  double ssr = 0.0;
  for (const auto& p : pts) {
    const double r = std::log(p.value) - my - fit.slope * (std::log(p.size) - mx);
    ssr += r * r;
  }
  fit.std_err = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
  return fit;
}

PmBreakdown evaluate_pm(const GridSpec& grid, const ErrorRates& rates,
                        Channel alpha, const PairKernel& f, int m) {
  if (m > 4)
    throw std::invalid_argument(
        "evaluate_pm: correction series is truncated at m <= 4");
  check_pm_args(rates, grid.n_cycles, grid.n_qubits, m);

  PmBreakdown out;
  out.m = m;
  out.stochastic = stochastic_pm(rates, alpha, grid.n_cycles, grid.n_qubits, m);

  const double eps_a = rates.eps[alpha];
  if (m >= 2 && eps_a > 0.0) {
    const std::int64_t cells = grid.cells();
    const double ordered = correction_pair_sum(grid, f);
    // one correlated pair among the m insertions; the remaining m - 2 cells
    // are free placements
    double logp = log_binomial(cells - 2, m - 2) + m * std::log(eps_a) +
                  (cells - m) * std::log1p(-rates.eps.sum());
    out.pair_correction = std::exp(logp) * 0.5 * ordered;
  }
  out.ratio = out.stochastic > 0.0 ? out.pair_correction / out.stochastic : 0.0;
  return out;
}

namespace {

// growth classification for the scaling-weighted pair sums
constexpr double kBoundedIncrement = 0.01;  // relative last dyadic step
constexpr double kLogLogSlopeCut = 0.5;
constexpr double kLogResidualCut = 0.02;  // rel. rms of the a + b ln L fit

std::string classify_growth(const std::vector<ScanRow>& rows,
                            const SlopeFit& fit) {
  const std::size_t n = rows.size();
  const double last = rows[n - 1].sum;
  const double prev = rows[n - 2].sum;
  if (std::abs(last - prev) < kBoundedIncrement * std::abs(last))
    return "bounded";
  if (fit.slope < kLogLogSlopeCut) {
    // linear fit of sum against ln L
    double sx = 0.0, sy = 0.0;
    for (const auto& r : rows) {
      sx += std::log(r.size);
      sy += r.sum;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& r : rows) {
      const double ex = std::log(r.size) - mx;
      sxx += ex * ex;
      sxy += ex * (r.sum - my);
    }
    const double b = sxy / sxx;
    double ssr = 0.0, syy = 0.0;
    for (const auto& r : rows) {
      const double res = r.sum - my - b * (std::log(r.size) - mx);
      ssr += res * res;
      syy += r.sum * r.sum;
    }
    if (b > 0.0 && std::sqrt(ssr / n) < kLogResidualCut * std::sqrt(syy / n))
      return "logarithmic";
  }
  return "power-law";
}

}  // namespace

ScanResult scaling_scan(const ScanSpec& spec) {
  if (spec.sizes.size() < 4)
    throw std::invalid_argument("scaling_scan: need at least 4 dyadic sizes");
  const double eps_a = spec.rates.eps[spec.channel];
  if (!(eps_a > 0.0))
    throw std::invalid_argument("scaling_scan: channel rate must be positive");

  BathSpec bath;
  bath.z = spec.correlator.z;
  const double z = spec.correlator.z;
  const double vol_power = 0.5 * (spec.comp_dim + z);

  auto plain = [&](std::span<const double> dx, double dt) {
    return pair_correlator_F(spec.correlator, spec.lambda_star, spec.delta_t,
                             eps_a, dx, dt);
  };
  auto weighted = [&](std::span<const double> dx, double dt) {
    double b2 = 0.0;
    for (double v : dx) b2 += v * v;
    if (dt != 0.0 && z > 0.0) b2 += std::pow(std::abs(dt), 2.0 / z);
    return plain(dx, dt) * std::pow(b2, vol_power);
  };

  ScanResult out;
  std::vector<ScalePoint> fit_pts;
  for (int L : spec.sizes) {
    std::int64_t r = 1;
    for (int d = 0; d < spec.comp_dim; ++d) r *= L;
    const auto grid = make_grid(spec.delta_t, L, static_cast<int>(r),
                                spec.comp_dim, bath);
    ScanRow row;
    row.size = L;
    row.sum = correction_pair_sum(grid, weighted) /
              static_cast<double>(grid.cells());
    row.ratio = evaluate_pm(grid, spec.rates, spec.channel, plain, 2).ratio;
    out.rows.push_back(row);
    fit_pts.push_back({static_cast<double>(L), row.sum});
  }
  out.fit = fit_scaling_exponent(fit_pts);
  out.behavior = classify_growth(out.rows, out.fit);
  return out;
}

}  // namespace resilience
