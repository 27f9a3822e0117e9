#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace ait::config {

// Shared knobs for the command-line tools, stored as a flat key=value file:
// one pair per line, '#' starts a comment, unknown keys are errors so typos
// fail loudly instead of silently running with defaults.
struct RunConfig {
  unsigned max_len = 14;      // machine enumeration length cap
  long long steps = 20000;    // machine step budget
  std::uint64_t seed = 1;     // base seed for anything randomized
  std::uint64_t trials = 100; // Monte Carlo trial count
  int threads = 0;            // 0 = all cores, 1 = serial reference
  double c = 8.0;             // calibration slack for the counting bounds
  double c1 = 4.0;            // secondary calibration constant
  std::string battery = "default";  // default | universal
  std::string format = "ascii";     // ascii | packed bit files
  bool deterministic = false;       // suppress timestamps in reports

  bool operator==(const RunConfig&) const = default;

  void validate() const;  // throws std::invalid_argument on bad values

  // Lossless text form, keys sorted. Doubles round-trip bit for bit.
  std::map<std::string, std::string> entries() const;
  static RunConfig from_entries(const std::map<std::string, std::string>& kv);

  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;
};

}  // namespace ait::config
