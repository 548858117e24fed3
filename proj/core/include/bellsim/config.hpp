#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "bellsim/source.hpp"

namespace bellsim {

/// Configuration problem with a file:line anchored message.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message) {}
};

/// Minimal key = value file: one assignment per line, '#' starts a
/// full-line comment, blank lines ignored. Duplicate keys are errors.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text,
                            const std::string& name = "<config>");

  bool has(const std::string& key) const;
  double number(const std::string& key) const;

  /// Line number of the key's assignment (for error anchoring).
  int line_of(const std::string& key) const;

  const std::string& name() const { return name_; }
  const std::map<std::string, std::string>& entries() const { return values_; }

  /// "<name>:<line>: <message>" as a ConfigError.
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  [[noreturn]] void fail_at(int line, const std::string& message) const;

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

/// Builds SourceParams from the keys
///   crystal_length_mm, d_g_fs_per_mm,
///   kappa XOR (lambda_p_fs_per_mm AND sigma_p_rad_per_fs).
/// Unknown keys, missing keys, mixing the kappa and sigma_p paths, or
/// out-of-domain values (non-positive length, zero d_g) are ConfigErrors.
SourceParams source_params_from_config(const Config& config);

/// Human-readable echo of the resolved parameters, one "key = value" per
/// line, including the derived kappa and window half-width.
std::string describe(const SourceParams& params);

}  // namespace bellsim
