#include "resilience/hypercube.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "resilience/errors.hpp"
#include "resilience/quadrature.hpp"

namespace resilience {

void GridSpec::validate() const {
  if (!(delta_t > 0.0))
    throw std::invalid_argument("delta_t must be positive");
  if (n_cycles < 1) throw std::invalid_argument("n_cycles must be positive");
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
  if (comp_dim < 1) throw std::invalid_argument("comp_dim must be positive");
  if (!(spacing >= 0.0)) throw std::invalid_argument("spacing must be >= 0");
}

GridSpec make_grid(double delta_t, int n_cycles, int n_qubits, int comp_dim,
                   const BathSpec& bath) {
  bath.validate();
  GridSpec g;
  g.delta_t = delta_t;
  g.n_cycles = n_cycles;
  g.n_qubits = n_qubits;
  g.comp_dim = comp_dim;
  g.spacing =
      bath.z > 0.0 ? std::pow(bath.v * delta_t, 1.0 / bath.z) : 0.0;
  g.validate();
  return g;
}

PulseSequence equally_spaced_pulses(int n, double delta_t) {
  if (n < 0) throw std::invalid_argument("n_pulses must be non-negative");
  if (!(delta_t > 0.0))
    throw std::invalid_argument("delta_t must be positive");
  PulseSequence seq;
  seq.schedule.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k)
    seq.schedule.push_back(delta_t * k / (n + 1.0));
  return seq;
}

void validate_pulses(const PulseSequence& seq, double delta_t) {
  double prev = 0.0;
  for (double t : seq.schedule) {
    if (!(t > prev) || !(t < delta_t))
      throw std::invalid_argument(
          "pulse schedule must be strictly increasing inside (0, delta_t)");
    prev = t;
  }
}

ErrorRates make_error_rates(const PerChannel& eps,
                            const PerChannel& lambda_star) {
  for (Channel c : kChannels) {
    if (!(eps[c] >= 0.0))
      throw std::invalid_argument("error rates must be non-negative");
  }
  if (!(eps.sum() < 1.0)) {
    std::ostringstream os;
    os << "total error rate " << eps.sum()
       << " >= 1: outside the perturbative regime";
    throw ModelError(os.str());
  }
  return ErrorRates{eps, lambda_star};
}

namespace {

void check_epsilon_args(const Correlator& c, double lambda_star,
                        double delta_t, double tol) {
  if (!(lambda_star >= 0.0))
    throw std::invalid_argument("lambda_star must be non-negative");
  if (!(delta_t > 0.0))
    throw std::invalid_argument("delta_t must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (c.kind == CorrelatorKind::PowerLaw && c.z == 0.0)
    throw ModelError(
        "epsilon integral undefined for z = 0 power-law correlators: "
        "instantaneous interactions carry no intra-cycle time correlations");
}

double check_perturbative(double eps) {
  if (eps >= 1.0) {
    std::ostringstream os;
    os << "epsilon = " << eps << " >= 1: outside the perturbative regime";
    throw ModelError(os.str());
  }
  return eps;
}

}  // namespace

double epsilon_alpha(const Correlator& c, double lambda_star, double delta_t,
                     double tol) {
  return epsilon_with_pulses(c, lambda_star, delta_t, PulseSequence{}, tol);
}

double epsilon_with_pulses(const Correlator& c, double lambda_star,
                           double delta_t, const PulseSequence& seq,
                           double tol) {
  check_epsilon_args(c, lambda_star, delta_t, tol);
  validate_pulses(seq, delta_t);
  if (lambda_star == 0.0) return 0.0;

  // Panel boundaries at the flip times: the sign product is constant on each
  // panel, so the integrand seen by the quadrature stays smooth.
  std::vector<double> bounds;
  bounds.reserve(seq.schedule.size() + 2);
  bounds.push_back(0.0);
  for (double t : seq.schedule) bounds.push_back(t);
  bounds.push_back(delta_t);
  const std::size_t panels = bounds.size() - 1;

  auto corr = [&](double t1, double t2) {
    return two_point(c, std::span<const double>{}, t1 - t2);
  };

  const double lam2 = lambda_star * lambda_star;
  const double total_tol = tol / lam2;
  const double area = delta_t * delta_t;
  double integral = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    for (std::size_t j = 0; j < panels; ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      const double panel_area =
          (bounds[i + 1] - bounds[i]) * (bounds[j + 1] - bounds[j]);
      QuadratureOptions opt;
      opt.abs_tol = total_tol * panel_area / area;
      integral += sign * integrate_2d(corr, bounds[i], bounds[i + 1],
                                      bounds[j], bounds[j + 1], opt);
    }
  }
  return check_perturbative(lam2 * integral);
}

double effective_dimension(double delta, int n_pulses, double z) {
  if (!(delta >= 0.0) || n_pulses < 0 || !(z >= 0.0))
    throw std::invalid_argument("effective_dimension: inputs must be >= 0");
  return 2.0 * (delta + n_pulses * z);
}

double pair_correlator_F(const Correlator& c, double lambda_star,
                         double delta_t, double eps, std::span<const double> dx,
                         double dt) {
  if (!(eps > 0.0))
    throw std::invalid_argument("pair_correlator_F: eps must be positive");
  if (c.z == 0.0 && dt != 0.0) return 0.0;  // no memory across cycles
  const double pref = lambda_star * delta_t * lambda_star * delta_t / eps;
  const double corr = two_point(c, dx, dt);
  return pref * pref * 2.0 * corr * corr;
}

double pair_correlator_F(const Correlator& c, double lambda_star,
                         double delta_t, double eps, double dx, double dt) {
  return pair_correlator_F(c, lambda_star, delta_t, eps,
                           std::span<const double>(&dx, 1), dt);
}

}  // namespace resilience
