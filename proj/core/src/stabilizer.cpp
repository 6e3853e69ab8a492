#include "resilience/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resilience {

std::string pauli_to_string(const PauliOp& p) {
  std::string s;
  s.reserve(static_cast<std::size_t>(p.n));
  for (int q = 0; q < p.n; ++q) {
    const bool x = (p.x_bits >> q) & 1;
    const bool z = (p.z_bits >> q) & 1;
    s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

std::uint32_t StabilizerCode::syndrome(const PauliOp& error) const {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (!commutes(error, generators[i])) s |= 1u << i;
  return s;
}

StabilizerCode steane_code() {
  // Hamming(7,4) parity checks; qubit q sits on bit q
  constexpr std::uint32_t kChecks[3] = {0b1010101, 0b0110011, 0b0001111};

  StabilizerCode code;
  code.n = 7;
  code.k = 1;
  for (std::uint32_t m : kChecks) code.generators.push_back({m, 0, 7});
  for (std::uint32_t m : kChecks) code.generators.push_back({0, m, 7});
  code.logical_x = {0b1111111, 0, 7};
  code.logical_z = {0, 0b1111111, 7};

  // minimum-weight lookup: enumerate all Paulis ordered by
  // (weight, x_bits, z_bits) and keep the first representative per syndrome
  std::vector<PauliOp> all;
  all.reserve(1u << 14);
  for (std::uint32_t x = 0; x < 128; ++x)
    for (std::uint32_t z = 0; z < 128; ++z) all.push_back({x, z, 7});
  std::sort(all.begin(), all.end(), [](const PauliOp& a, const PauliOp& b) {
    const int wa = pauli_weight(a), wb = pauli_weight(b);
    if (wa != wb) return wa < wb;
    if (a.x_bits != b.x_bits) return a.x_bits < b.x_bits;
    return a.z_bits < b.z_bits;
  });
  code.decoder.assign(64, PauliOp{0, 0, 7});
  std::vector<bool> seen(64, false);
  for (const PauliOp& p : all) {
    const std::uint32_t s = code.syndrome(p);
    if (!seen[s]) {
      seen[s] = true;
      code.decoder[s] = p;
    }
  }
  return code;
}

CycleVerdict decode_cycle(const StabilizerCode& code, const PauliOp& error) {
  if (error.n != code.n)
    throw std::invalid_argument("decode_cycle: error acts on wrong qubit count");
  const PauliOp residual =
      pauli_product(error, code.decoder[code.syndrome(error)]);
  const bool lx = !commutes(residual, code.logical_z);  // X-type logical content
  const bool lz = !commutes(residual, code.logical_x);
  if (lx && lz) return CycleVerdict::LogicalY;
  if (lx) return CycleVerdict::LogicalX;
  if (lz) return CycleVerdict::LogicalZ;
  return CycleVerdict::NoError;
}

PauliOp sample_error(const PerChannel& eps, int n, Rng& rng) {
  for (Channel c : kChannels)
    if (!(eps[c] >= 0.0))
      throw std::invalid_argument("sample_error: rates must be non-negative");
  if (!(eps.sum() < 1.0))
    throw std::invalid_argument("sample_error: total rate must be below 1");
  const double px = eps.x, pxy = eps.x + eps.y, pxyz = eps.sum();
  PauliOp e{0, 0, n};
  for (int q = 0; q < n; ++q) {
    const double u = rng.next_double();
    if (u < px) {
      e.x_bits |= 1u << q;
    } else if (u < pxy) {
      e.x_bits |= 1u << q;
      e.z_bits |= 1u << q;
    } else if (u < pxyz) {
      e.z_bits |= 1u << q;
    }
  }
  return e;
}

RateEstimate logical_error_rate(const StabilizerCode& code,
                                const PerChannel& eps, std::uint64_t samples,
                                std::uint64_t seed) {
  if (samples < 10'000)
    throw std::invalid_argument(
        "logical_error_rate: need at least 1e4 samples");
  constexpr std::uint64_t kBatches = 100;
  const std::uint64_t per_batch = samples / kBatches;
  std::uint64_t total_fails = 0;
  double batch_rates[kBatches];
  for (std::uint64_t b = 0; b < kBatches; ++b) {
    Rng rng = Rng::stream(seed, b);
    std::uint64_t fails = 0;
    for (std::uint64_t i = 0; i < per_batch; ++i) {
      const PauliOp e = sample_error(eps, code.n, rng);
      if (decode_cycle(code, e) != CycleVerdict::NoError) ++fails;
    }
    total_fails += fails;
    batch_rates[b] = static_cast<double>(fails) / per_batch;
  }
  RateEstimate est;
  est.samples = per_batch * kBatches;
  est.rate = static_cast<double>(total_fails) / est.samples;
  double var = 0.0;
  for (double r : batch_rates) var += (r - est.rate) * (r - est.rate);
  est.std_err = std::sqrt(var / (kBatches * (kBatches - 1.0)));
  return est;
}

ConcatenationReport concatenation_map(double p, double c, int levels) {
  if (!(c > 0.0))
    throw std::invalid_argument("concatenation_map: c must be positive");
  if (!(p >= 0.0))
    throw std::invalid_argument("concatenation_map: p must be non-negative");
  if (levels < 0)
    throw std::invalid_argument("concatenation_map: levels must be >= 0");
  ConcatenationReport rep;
  rep.threshold = 1.0 / c;
  rep.rates.reserve(static_cast<std::size_t>(levels) + 1);
  rep.rates.push_back(p);
  double cur = p;
  for (int l = 0; l < levels; ++l) {
    cur = c * cur * cur;
    rep.rates.push_back(cur);
  }
  rep.below = rep.rates.back() < rep.rates.front() || p == 0.0;
  return rep;
}

}  // namespace resilience
