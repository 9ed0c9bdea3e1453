#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kglab::runner {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Flat `key = value` settings plus an optional `[sweep]` section whose values
 * are comma-separated lists.  '#' starts a comment.
 */
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;
  std::map<std::string, std::string> sweep;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir = "kglab-out";
  std::filesystem::path base_dir = ".";  // relative file references resolve here
  unsigned threads = 0;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string text(const std::string& key, const std::string& fallback) const;
  std::string text(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  double real(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> sweep_reals(const std::string& key, std::vector<double> fallback) const;
  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;
  std::filesystem::path path(const std::string& key) const;
  std::uint64_t require_seed() const;
};

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

// numbers separated by commas and/or whitespace
std::vector<double> parse_list(std::string_view text);

}  // namespace kglab::runner
