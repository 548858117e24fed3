#include "bellsim/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bellsim/serialize.hpp"

namespace bellsim {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

const char* const kSourceKeys[] = {"crystal_length_mm", "d_g_fs_per_mm",
                                   "lambda_p_fs_per_mm", "sigma_p_rad_per_fs",
                                   "kappa"};

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& name) {
  Config config;
  config.name_ = name;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      config.fail_at(line_no, "expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) config.fail_at(line_no, "empty key");
    if (value.empty()) config.fail_at(line_no, "empty value for key '" + key + "'");
    if (config.values_.count(key) != 0) {
      config.fail_at(line_no, "duplicate key '" + key + "'");
    }
    config.values_[key] = value;
    config.lines_[key] = line_no;
  }
  return config;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) != 0;
}

double Config::number(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(name_ + ": missing required key '" + key + "'");
  }
  const std::string& text = it->second;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty()) {
    fail(key, "value '" + text + "' is not a number");
  }
  return value;
}

int Config::line_of(const std::string& key) const {
  const auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

void Config::fail(const std::string& key, const std::string& message) const {
  fail_at(line_of(key), message);
}

void Config::fail_at(int line, const std::string& message) const {
  throw ConfigError(name_ + ":" + std::to_string(line) + ": " + message);
}

SourceParams source_params_from_config(const Config& config) {
  for (const auto& [key, value] : config.entries()) {
    bool known = false;
    for (const char* allowed : kSourceKeys) {
      if (key == allowed) known = true;
    }
    if (!known) config.fail(key, "unknown key '" + key + "'");
  }

  const double length = config.number("crystal_length_mm");
  const double d_g = config.number("d_g_fs_per_mm");
  if (!(length > 0.0)) {
    config.fail("crystal_length_mm", "crystal length must be positive");
  }
  if (d_g == 0.0) {
    config.fail("d_g_fs_per_mm", "d_g must be nonzero; delay map undefined");
  }

  const bool has_kappa = config.has("kappa");
  const bool has_lambda = config.has("lambda_p_fs_per_mm");
  const bool has_sigma = config.has("sigma_p_rad_per_fs");
  if (has_kappa && (has_lambda || has_sigma)) {
    config.fail("kappa",
                "kappa conflicts with lambda_p_fs_per_mm/sigma_p_rad_per_fs; "
                "give one parameterization only");
  }
  if (!has_kappa && !(has_lambda && has_sigma)) {
    throw ConfigError(config.name() +
                      ": need either kappa or both lambda_p_fs_per_mm and "
                      "sigma_p_rad_per_fs");
  }

  try {
    if (has_kappa) {
      return SourceParams::from_kappa(length, d_g, config.number("kappa"));
    }
    const double sigma = config.number("sigma_p_rad_per_fs");
    if (!(sigma >= 0.0)) {
      config.fail("sigma_p_rad_per_fs", "sigma_p must be non-negative");
    }
    return SourceParams::from_pump(length, d_g,
                                   config.number("lambda_p_fs_per_mm"), sigma);
  } catch (const std::domain_error& e) {
    throw ConfigError(config.name() + ": " + e.what());
  }
}

std::string describe(const SourceParams& params) {
  std::ostringstream out;
  out << "crystal_length_mm = " << fmt9(params.length_mm()) << "\n"
      << "d_g_fs_per_mm = " << fmt9(params.d_g_fs_per_mm()) << "\n"
      << "kappa = " << fmt9(params.kappa()) << "\n"
      << "window_half_width_fs = " << fmt9(params.window_half_width_fs()) << "\n";
  return out.str();
}

}  // namespace bellsim
