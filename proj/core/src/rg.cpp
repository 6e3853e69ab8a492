#include "resilience/rg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "resilience/errors.hpp"
#include "resilience/hypercube.hpp"

namespace resilience {

double flow_exponent(int comp_dim, double z, double dim_f) {
  if (comp_dim < 1)
    throw std::invalid_argument("flow_exponent: comp_dim must be >= 1");
  if (!(z >= 0.0) || !(dim_f >= 0.0))
    throw std::invalid_argument("flow_exponent: z and dim_f must be >= 0");
  return comp_dim + z - dim_f;
}

Classification classify_exponent(double exponent, double tol) {
  Classification c;
  c.exponent = exponent;
  if (exponent > tol)
    c.verdict = Verdict::Relevant;
  else if (exponent < -tol)
    c.verdict = Verdict::Irrelevant;
  else
    c.verdict = Verdict::Marginal;
  return c;
}

std::array<Classification, 3> classify(const NoiseModel& model, int comp_dim,
                                       int n_pulses, double tol) {
  model.validate();
  if (n_pulses < 0)
    throw std::invalid_argument("classify: n_pulses must be >= 0");
  std::array<Classification, 3> out;
  for (Channel c : kChannels) {
    const double dim_f =
        effective_dimension(model.bath.delta[c], n_pulses, model.bath.z);
    out[static_cast<std::size_t>(c)] =
        classify_exponent(flow_exponent(comp_dim, model.bath.z, dim_f), tol);
  }
  return out;
}

std::optional<int> pulses_needed(int comp_dim, double z, double delta) {
  if (comp_dim < 1)
    throw std::invalid_argument("pulses_needed: comp_dim must be >= 1");
  if (!(z >= 0.0) || !(delta >= 0.0))
    throw std::invalid_argument("pulses_needed: z and delta must be >= 0");
  auto irrelevant_with = [&](int n) {
    return 2.0 * (delta + n * z) > comp_dim + z;
  };
  if (irrelevant_with(0)) return 0;
  if (z == 0.0) return std::nullopt;  // pulses are dimensionally inert
  // jump near the boundary, then settle on the exact minimal n with the same
  // predicate the classifier uses
  const double guess = ((comp_dim + z) / 2.0 - delta) / z;
  int n = guess > 2.0 ? static_cast<int>(guess) - 1 : 1;
  while (!irrelevant_with(n)) ++n;
  while (n > 0 && irrelevant_with(n - 1)) --n;
  return n;
}

namespace {

void beta_rhs(const std::vector<double>& lam, const CouplingTable& g,
              const CouplingTable& h, std::vector<double>& out) {
  const std::size_t n = lam.size();
  for (std::size_t a = 0; a < n; ++a) {
    double quad = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        quad += g[b][c] * lam[b] * lam[c];
      }
    }
    double sq = 0.0;
    for (std::size_t b = 0; b < n; ++b) sq += h[a][b] * lam[b] * lam[b];
    out[a] = quad + lam[a] * sq;
  }
}

void check_table(const CouplingTable& t, std::size_t n, const char* name) {
  if (t.size() != n)
    throw std::invalid_argument(std::string(name) +
                                " must be square with one row per coupling");
  for (const auto& row : t) {
    if (row.size() != n)
      throw std::invalid_argument(std::string(name) +
                                  " must be square with one row per coupling");
    for (double v : row)
      if (!std::isfinite(v))
        throw std::invalid_argument(std::string(name) +
                                    " entries must be finite");
  }
}

}  // namespace

FlowTrajectory integrate_beta(std::span<const double> lambda0,
                              const CouplingTable& g, const CouplingTable& h,
                              double ell_max, double step,
                              const BetaOptions& opt) {
  if (!(step > 0.0))
    throw std::invalid_argument("integrate_beta: step must be positive");
  if (!(ell_max > 0.0))
    throw std::invalid_argument("integrate_beta: ell_max must be positive");
  const std::size_t n = lambda0.size();
  if (n == 0) throw std::invalid_argument("integrate_beta: empty coupling");
  check_table(g, n, "g");
  check_table(h, n, "h");

  FlowTrajectory traj;
  std::vector<double> lam(lambda0.begin(), lambda0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  double ell = 0.0;
  traj.samples.push_back({ell, lam});

  const int stride = std::max(1, opt.record_stride);
  long step_index = 0;
  while (ell < ell_max) {
    const double hstep = std::min(step, ell_max - ell);
    beta_rhs(lam, g, h, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = lam[i] + 0.5 * hstep * k1[i];
    beta_rhs(tmp, g, h, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = lam[i] + 0.5 * hstep * k2[i];
    beta_rhs(tmp, g, h, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = lam[i] + hstep * k3[i];
    beta_rhs(tmp, g, h, k4);
    for (std::size_t i = 0; i < n; ++i)
      lam[i] += hstep / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    ell += hstep;
    ++step_index;

    bool blew_up = false;
    for (double v : lam) {
      if (!std::isfinite(v))
        throw NumericsError("integrate_beta: non-finite state encountered");
      if (std::abs(v) > opt.blow_up) blew_up = true;
    }
    if (blew_up) {
      traj.samples.push_back({ell, lam});
      traj.diverged = true;
      break;
    }
    if (step_index % stride == 0 || ell >= ell_max)
      traj.samples.push_back({ell, lam});
  }
  if (traj.samples.back().ell != ell) traj.samples.push_back({ell, lam});
  traj.terminal = lam;
  return traj;
}

PerChannel lambda_star(const NoiseModel& model, double delta_t, double step) {
  model.validate();
  if (!(delta_t > 0.0))
    throw std::invalid_argument("lambda_star: delta_t must be positive");
  const double scale = model.bath.cutoff * model.bath.v * delta_t;
  if (!(scale > 1.0)) {
    std::ostringstream os;
    os << "lambda_star: cutoff * v * delta_t = " << scale
       << " must exceed 1 (grid scale must lie below the cutoff)";
    throw ModelError(os.str());
  }
  const double ell_star = std::log(scale);
  const std::array<double, 3> l0{model.lambda.x, model.lambda.y,
                                 model.lambda.z};
  CouplingTable g(3, std::vector<double>(3)), h(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g[i][j] = model.beta_g[i][j];
      h[i][j] = model.beta_h[i][j];
    }
  BetaOptions opt;
  opt.record_stride = 1 << 20;  // terminal value only
  const auto traj = integrate_beta(l0, g, h, ell_star,
                                   std::min(step, ell_star), opt);
  if (traj.diverged)
    throw ModelError(
        "lambda_star: flow diverged before the grid scale; perturbative "
        "treatment invalid");
  return PerChannel{traj.terminal[0], traj.terminal[1], traj.terminal[2]};
}

KtTrajectory kt_flow(double x0, double y0, double ell_max, double step,
                     const KtOptions& opt) {
  if (!(step > 0.0))
    throw std::invalid_argument("kt_flow: step must be positive");
  if (!(y0 >= 0.0))
    throw std::invalid_argument("kt_flow: fugacity must be non-negative");

  KtTrajectory traj;
  double x = x0, y = y0, ell = 0.0;
  traj.samples.push_back({ell, x, y});
  auto finish = [&](KtVerdict v) {
    if (traj.samples.back().ell != ell) traj.samples.push_back({ell, x, y});
    traj.x = x;
    traj.y = y;
    traj.verdict = v;
    return traj;
  };

  if (y <= opt.y_floor) return finish(KtVerdict::Bound);

  const int stride = std::max(1, opt.record_stride);
  long step_index = 0;
  while (ell < ell_max) {
    const double hstep = std::min(step, ell_max - ell);
    // RK4 on (x, y) with dx = y^2, dy = x y
    const double k1x = y * y, k1y = x * y;
    const double x2 = x + 0.5 * hstep * k1x, y2 = y + 0.5 * hstep * k1y;
    const double k2x = y2 * y2, k2y = x2 * y2;
    const double x3 = x + 0.5 * hstep * k2x, y3 = y + 0.5 * hstep * k2y;
    const double k3x = y3 * y3, k3y = x3 * y3;
    const double x4 = x + hstep * k3x, y4 = y + hstep * k3y;
    const double k4x = y4 * y4, k4y = x4 * y4;
    x += hstep / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    y += hstep / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    ell += hstep;
    ++step_index;

    if (!std::isfinite(x) || !std::isfinite(y))
      throw NumericsError("kt_flow: non-finite state encountered");
    if (step_index % stride == 0) traj.samples.push_back({ell, x, y});
    if (y >= opt.blow_up) return finish(KtVerdict::Unbound);
    if (y <= opt.y_floor) return finish(KtVerdict::Bound);
  }
  return finish(KtVerdict::Undetermined);
}

}  // namespace resilience
