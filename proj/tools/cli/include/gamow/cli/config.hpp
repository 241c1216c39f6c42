#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamow::cli {

/// Malformed, unknown or out-of-range configuration. Reported with exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key = value" document. Keys are dotted (grid.time.max); '#' starts a
/// comment; later assignments replace earlier ones.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::string& path);

  /// Applies "key=value", as given to --set.
  void assign(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> find(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated numbers.
  std::vector<double> get_list(const std::string& key) const;

  /// Throws ConfigError naming the first key that `known` rejects.
  template <typename Predicate>
  void reject_unknown(Predicate known) const {
    for (const auto& [key, value] : values_) {
      if (!known(key)) throw ConfigError("unknown configuration key '" + key + "'");
    }
  }

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& key);
long long parse_int(const std::string& text, const std::string& key);
std::vector<double> parse_list(const std::string& text, const std::string& key);

}  // namespace gamow::cli
