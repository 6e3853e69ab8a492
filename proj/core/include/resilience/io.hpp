#pragma once

#include <string>
#include <vector>

#include "resilience/coulombgas.hpp"
#include "resilience/probability.hpp"
#include "resilience/rg.hpp"

namespace resilience {

// shortest round-trip decimal representation, C locale, no exponent locale
// surprises
std::string format_double(double v);

// CSV: ',' delimiter, '.' decimal point, header row, LF line endings
std::string flow_csv(const FlowTrajectory& traj);
std::string kt_csv(const KtTrajectory& traj);
std::string scan_csv(const ScanResult& scan);
std::string coulomb_csv(const std::vector<GasSample>& series);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace resilience
