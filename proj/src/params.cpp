#include "grn/params.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "grn/errors.hpp"

namespace grn {

void ModelParams::validate() const {
  if (!(alpha_m > 0.0) || !(alpha_p > 0.0) || !(mu > 0.0))
    throw ConfigError("rates must be strictly positive");
  if (h < 1) throw ConfigError("Hill coefficient must be >= 1");
  if (!(0.0 < x_M && x_M < l && l < 1.0))
    throw ConfigError("need 0 < x_M < l < 1");
  if (!(epsilon > 0.0) || epsilon >= std::min(x_M, l - x_M))
    throw ConfigError("epsilon must satisfy 0 < epsilon < min(x_M, l - x_M)");
}

void DiffusionRange::validate() const {
  if (!(0.0 < d1 && d1 <= D && D <= d2))
    throw ConfigError("need 0 < d1 <= D <= d2");
}

namespace {
std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}
}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "alpha_m") cfg.params.alpha_m = std::stod(val);
      else if (key == "alpha_p") cfg.params.alpha_p = std::stod(val);
      else if (key == "mu") cfg.params.mu = std::stod(val);
      else if (key == "h") cfg.params.h = std::stoi(val);
      else if (key == "l") cfg.params.l = std::stod(val);
      else if (key == "x_M") cfg.params.x_M = std::stod(val);
      else if (key == "epsilon") cfg.params.epsilon = std::stod(val);
      else if (key == "D") cfg.D = std::stod(val);
      else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key " + key);
    } catch (const std::invalid_argument&) {
      throw ConfigError("config line " + std::to_string(lineno) + ": bad number " + val);
    }
  }
  cfg.params.validate();
  return cfg;
}

}  // namespace grn
