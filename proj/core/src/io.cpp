#include "resilience/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "resilience/errors.hpp"

namespace resilience {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string flow_csv(const FlowTrajectory& traj) {
  std::string out = "ell,lambda_x,lambda_y,lambda_z\n";
  for (const auto& s : traj.samples) {
    out += format_double(s.ell);
    for (std::size_t i = 0; i < 3; ++i) {
      out += ',';
      out += format_double(i < s.lambda.size() ? s.lambda[i] : 0.0);
    }
    out += '\n';
  }
  return out;
}

std::string kt_csv(const KtTrajectory& traj) {
  std::string out = "ell,x,y\n";
  for (const auto& s : traj.samples) {
    out += format_double(s.ell);
    out += ',';
    out += format_double(s.x);
    out += ',';
    out += format_double(s.y);
    out += '\n';
  }
  return out;
}

std::string scan_csv(const ScanResult& scan) {
  std::string out = "L,sum,ratio\n";
  for (const auto& r : scan.rows) {
    out += std::to_string(r.size);
    out += ',';
    out += format_double(r.sum);
    out += ',';
    out += format_double(r.ratio);
    out += '\n';
  }
  return out;
}

std::string coulomb_csv(const std::vector<GasSample>& series) {
  std::string out = "sweep,pairs,r2\n";
  for (const auto& s : series) {
    out += std::to_string(s.sweep);
    out += ',';
    out += std::to_string(s.pairs);
    out += ',';
    out += format_double(s.r2);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << content;
  if (!out) throw ConfigError("failed writing output file: " + path);
}

}  // namespace resilience
