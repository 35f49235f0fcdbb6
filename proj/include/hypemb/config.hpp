#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypemb {

/// Thrown on malformed configuration or flags; the CLI maps it to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plain-text key = value configuration with typed getters. Later sets
/// override earlier ones, so command-line flags win over the config file.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  void merge_overrides(const KeyValueConfig& overrides);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated doubles, or lo:hi:step grid notation.
  std::vector<double> get_double_list(const std::string& key,
                                      const std::vector<double>& fallback) const;
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

  /// Sorted key/value pairs for report echoing.
  std::vector<std::pair<std::string, std::string>> echo() const;

 private:
  std::map<std::string, std::string> kv_;
};

std::vector<double> parse_grid(const std::string& text);

}  // namespace hypemb
