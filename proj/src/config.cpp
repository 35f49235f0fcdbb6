#include "hypemb/config.hpp"

#include <fstream>
#include <sstream>

namespace hypemb {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  KeyValueConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + " is not key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw UsageError("empty key on config line " + std::to_string(lineno));
    cfg.set(key, value);
  }
  return cfg;
}

void KeyValueConfig::merge_overrides(const KeyValueConfig& overrides) {
  for (const auto& [k, v] : overrides.kv_) kv_[k] = v;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' is not an integer: " + it->second);
  }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' is not an unsigned integer: " + it->second);
  }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' is not a number: " + it->second);
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config key '" + key + "' is not a boolean: " + v);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string lo_s, hi_s, step_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
        !std::getline(in, step_s, ':'))
      throw UsageError("grid must be lo:hi:step, got: " + text);
    double lo = std::stod(lo_s), hi = std::stod(hi_s), step = std::stod(step_s);
    if (!(step > 0.0) || hi < lo) throw UsageError("bad grid bounds: " + text);
    for (int i = 0;; ++i) {
      double v = lo + i * step;
      if (v > hi + 1e-12) break;
      out.push_back(v);
    }
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw UsageError("empty list: " + text);
  return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return parse_grid(it->second);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' is not a number list: " + it->second);
  }
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key,
                                              const std::vector<int>& fallback) const {
  auto doubles = get_double_list(key, {});
  if (doubles.empty()) return fallback;
  std::vector<int> out;
  out.reserve(doubles.size());
  for (double d : doubles) out.push_back(static_cast<int>(d));
  return out;
}

std::vector<std::pair<std::string, std::string>> KeyValueConfig::echo() const {
  return {kv_.begin(), kv_.end()};
}

}  // namespace hypemb
