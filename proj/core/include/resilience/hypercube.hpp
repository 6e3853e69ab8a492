#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "resilience/bath.hpp"
#include "resilience/channel.hpp"

namespace resilience {

// Coarse-grained space-time grid: N cycles of duration delta_t by R qubits on
// a D-dimensional lattice, one qubit per spatial cell of linear size
// (v * delta_t)^(1/z) (cutoff-length units; 0 in the z = 0 mode).
struct GridSpec {
  double delta_t = 1.0;
  int n_cycles = 1;
  int n_qubits = 1;
  int comp_dim = 1;
  double spacing = 1.0;

  std::int64_t cells() const {
    return static_cast<std::int64_t>(n_cycles) * n_qubits;
  }
  void validate() const;
};

GridSpec make_grid(double delta_t, int n_cycles, int n_qubits, int comp_dim,
                   const BathSpec& bath);

// Sign-flip times inside one cycle, strictly increasing in (0, delta_t).
struct PulseSequence {
  std::vector<double> schedule;

  int n_pulses() const { return static_cast<int>(schedule.size()); }
};

PulseSequence equally_spaced_pulses(int n, double delta_t);
void validate_pulses(const PulseSequence& seq, double delta_t);

// Per-channel error probabilities plus the renormalized couplings that
// produced them. Total rate must stay below 1 (perturbative regime).
struct ErrorRates {
  PerChannel eps{};
  PerChannel lambda_star{};
};

ErrorRates make_error_rates(const PerChannel& eps,
                            const PerChannel& lambda_star);

// (lambda*)^2 times the double cycle integral of C(0, t1 - t2); adaptive
// quadrature with absolute error <= tol. Throws ModelError at >= 1.
double epsilon_alpha(const Correlator& c, double lambda_star, double delta_t,
                     double tol = 1e-8);

// Same integral with the +-1 sign function of the pulse schedule inserted at
// both times. Reduces to epsilon_alpha for an empty schedule.
double epsilon_with_pulses(const Correlator& c, double lambda_star,
                           double delta_t, const PulseSequence& seq,
                           double tol = 1e-8);

// dim[F] = 2 (delta + n z): each pulse pair adds one time derivative.
double effective_dimension(double delta, int n_pulses, double z);

// <F(x_i,t_i) F(x_j,t_j)> = ((lambda* delta_t)^2 / eps)^2 * 2 C(dx,dt)^2 for
// a real Gaussian field (normal ordering removes self-contractions). In the
// z = 0 mode separations across cycles carry no memory and the value is 0.
double pair_correlator_F(const Correlator& c, double lambda_star,
                         double delta_t, double eps, std::span<const double> dx,
                         double dt);
double pair_correlator_F(const Correlator& c, double lambda_star,
                         double delta_t, double eps, double dx, double dt);

}  // namespace resilience
