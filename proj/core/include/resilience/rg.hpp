#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "resilience/bath.hpp"
#include "resilience/channel.hpp"

namespace resilience {

struct FlowSample {
  double ell;
  std::vector<double> lambda;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  std::vector<double> terminal;
  bool diverged = false;
};

enum class Verdict { Relevant, Irrelevant, Marginal };

struct Classification {
  double exponent = 0.0;
  Verdict verdict = Verdict::Marginal;
};

constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Relevant: return "Relevant";
    case Verdict::Irrelevant: return "Irrelevant";
    case Verdict::Marginal: return "Marginal";
  }
  return "?";
}

// D + z - dim[F]
double flow_exponent(int comp_dim, double z, double dim_f);

Classification classify_exponent(double exponent, double tol = 1e-9);

// Per-channel exponent D + z - 2 (delta + n z) and verdict.
std::array<Classification, 3> classify(const NoiseModel& model, int comp_dim,
                                       int n_pulses, double tol = 1e-9);

// Smallest n with 2 (delta + n z) > D + z; nullopt when z = 0 makes the
// dimension pulse-independent and the bare flow is not irrelevant.
std::optional<int> pulses_needed(int comp_dim, double z, double delta);

using CouplingTable = std::vector<std::vector<double>>;

struct BetaOptions {
  double blow_up = 1e3;
  int record_stride = 1;
};

// Fixed-step fourth-order integration of
//   d lambda_a / d ell = sum_{b,c distinct, != a} g[b][c] lambda_b lambda_c
//                      + sum_b h[a][b] lambda_a lambda_b^2,
// halting early with the diverged flag once any |lambda| passes blow_up.
FlowTrajectory integrate_beta(std::span<const double> lambda0,
                              const CouplingTable& g, const CouplingTable& h,
                              double ell_max, double step,
                              const BetaOptions& opt = {});

// Couplings renormalized from the cutoff down to the grid scale:
// integrates the beta function to ell* = ln(cutoff * v * delta_t).
// Throws ModelError if the flow diverges first or the scale is not > 1.
PerChannel lambda_star(const NoiseModel& model, double delta_t,
                       double step = 1e-3);

enum class KtVerdict { Bound, Unbound, Undetermined };

constexpr std::string_view kt_verdict_name(KtVerdict v) {
  switch (v) {
    case KtVerdict::Bound: return "Bound";
    case KtVerdict::Unbound: return "Unbound";
    case KtVerdict::Undetermined: return "Undetermined";
  }
  return "?";
}

struct KtSample {
  double ell, x, y;
};

struct KtTrajectory {
  std::vector<KtSample> samples;
  double x = 0.0, y = 0.0;
  KtVerdict verdict = KtVerdict::Undetermined;
};

struct KtOptions {
  double blow_up = 1e3;
  double y_floor = 1e-12;
  int record_stride = 1;
};

// Reduced Kosterlitz-Thouless recursion dx/dl = y^2, dy/dl = x y. The exact
// flow conserves x^2 - y^2. Unbound once y passes blow_up, Bound once y falls
// below y_floor, Undetermined if neither happens by ell_max.
KtTrajectory kt_flow(double x0, double y0, double ell_max, double step,
                     const KtOptions& opt = {});

}  // namespace resilience
