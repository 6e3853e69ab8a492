#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "resilience/channel.hpp"
#include "resilience/rng.hpp"

namespace resilience {

// Binary-symplectic Pauli operator on up to 32 qubits; phase ignored.
struct PauliOp {
  std::uint32_t x_bits = 0;
  std::uint32_t z_bits = 0;
  int n = 0;

  friend bool operator==(const PauliOp&, const PauliOp&) = default;
};

inline bool commutes(const PauliOp& a, const PauliOp& b) {
  return ((std::popcount(a.x_bits & b.z_bits) +
           std::popcount(a.z_bits & b.x_bits)) &
          1) == 0;
}

// group product up to phase: bitwise XOR of the symplectic representation
inline PauliOp pauli_product(const PauliOp& a, const PauliOp& b) {
  return PauliOp{a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits, a.n};
}

inline int pauli_weight(const PauliOp& p) {
  return std::popcount(p.x_bits | p.z_bits);
}

std::string pauli_to_string(const PauliOp& p);

struct StabilizerCode {
  int n = 0;
  int k = 0;
  std::vector<PauliOp> generators;
  PauliOp logical_x;
  PauliOp logical_z;
  std::vector<PauliOp> decoder;  // indexed by syndrome bits

  // bit i set iff the error anticommutes with generators[i]
  std::uint32_t syndrome(const PauliOp& error) const;
};

// [[7,1,3]] CSS code with a minimum-weight lookup decoder; ties broken on the
// packed (weight, x_bits, z_bits) key.
StabilizerCode steane_code();

enum class CycleVerdict { NoError, LogicalX, LogicalZ, LogicalY };

constexpr std::string_view cycle_verdict_name(CycleVerdict v) {
  switch (v) {
    case CycleVerdict::NoError: return "NoError";
    case CycleVerdict::LogicalX: return "LogicalX";
    case CycleVerdict::LogicalZ: return "LogicalZ";
    case CycleVerdict::LogicalY: return "LogicalY";
  }
  return "?";
}

// Perfect extraction at the cycle boundary: syndrome, lookup correction,
// residual classified against the logical operators.
CycleVerdict decode_cycle(const StabilizerCode& code, const PauliOp& error);

// Independent X/Y/Z errors per qubit with the given probabilities.
PauliOp sample_error(const PerChannel& eps, int n, Rng& rng);

struct RateEstimate {
  double rate = 0.0;
  double std_err = 0.0;
  std::uint64_t samples = 0;
};

// Monte Carlo fraction of cycles whose verdict is not NoError. Samples are
// split into 100 batches with seed-derived streams (batch b uses stream b of
// the root seed), so the estimate is reproducible and chunk-stable.
RateEstimate logical_error_rate(const StabilizerCode& code,
                                const PerChannel& eps, std::uint64_t samples,
                                std::uint64_t seed);

struct ConcatenationReport {
  std::vector<double> rates;  // per level, starting at the physical rate
  double threshold = 0.0;     // 1 / c
  bool below = false;
};

// p_{l+1} = c p_l^2; below-threshold iff the sequence contracts.
ConcatenationReport concatenation_map(double p, double c, int levels);

}  // namespace resilience
