#include "ait/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ait::config {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string double_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool parse_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("config: expected true or false, got '" + v + "'");
}

}  // namespace

void RunConfig::validate() const {
  if (max_len == 0 || max_len > 62)
    throw std::invalid_argument("config: max_len must be in 1..62");
  if (steps <= 0) throw std::invalid_argument("config: steps must be positive");
  if (trials == 0) throw std::invalid_argument("config: trials must be positive");
  if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (!(c >= 0.0) || !std::isfinite(c) || !(c1 >= 0.0) || !std::isfinite(c1))
    throw std::invalid_argument("config: calibration constants must be finite and >= 0");
  if (battery != "default" && battery != "universal")
    throw std::invalid_argument("config: battery must be default or universal");
  if (format != "ascii" && format != "packed")
    throw std::invalid_argument("config: format must be ascii or packed");
}

std::map<std::string, std::string> RunConfig::entries() const {
  return {
      {"battery", battery},
      {"c", double_text(c)},
      {"c1", double_text(c1)},
      {"deterministic", deterministic ? "true" : "false"},
      {"format", format},
      {"max_len", std::to_string(max_len)},
      {"seed", std::to_string(seed)},
      {"steps", std::to_string(steps)},
      {"threads", std::to_string(threads)},
      {"trials", std::to_string(trials)},
  };
}

RunConfig RunConfig::from_entries(const std::map<std::string, std::string>& kv) {
  RunConfig cfg;
  for (const auto& [key, value] : kv) {
    try {
      if (key == "max_len")
        cfg.max_len = static_cast<unsigned>(std::stoul(value));
      else if (key == "steps")
        cfg.steps = std::stoll(value);
      else if (key == "seed")
        cfg.seed = std::stoull(value);
      else if (key == "trials")
        cfg.trials = std::stoull(value);
      else if (key == "threads")
        cfg.threads = std::stoi(value);
      else if (key == "c")
        cfg.c = std::stod(value);
      else if (key == "c1")
        cfg.c1 = std::stod(value);
      else if (key == "battery")
        cfg.battery = value;
      else if (key == "format")
        cfg.format = value;
      else if (key == "deterministic")
        cfg.deterministic = parse_bool(value);
      else
        throw std::invalid_argument("config: unknown key '" + key + "'");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("config: value out of range for '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " has empty key");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key '" + key + "'");
  }
  return from_entries(kv);
}

void RunConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("config: cannot write '" + path + "'");
  for (const auto& [key, value] : entries()) out << key << "=" << value << "\n";
}

}  // namespace ait::config
