#include "kglab/runner/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kglab::runner {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  return out;
}

}  // namespace

std::vector<double> parse_list(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  for (std::string tok; in >> tok;) out.push_back(to_real("list", tok));
  return out;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

std::string RunConfig::text(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw ConfigError("config: missing required key '" + key + "'");
  return it->second;
}

double RunConfig::real(const std::string& key, double fallback) const {
  return has(key) ? to_real(key, values.at(key)) : fallback;
}

double RunConfig::real(const std::string& key) const { return to_real(key, text(key)); }

long long RunConfig::integer(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values.at(key);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = values.at(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> RunConfig::sweep_reals(const std::string& key, std::vector<double> fallback) const {
  auto it = sweep.find(key);
  if (it == sweep.end()) return fallback;
  try {
    return parse_list(it->second);
  } catch (const ConfigError&) {
    throw ConfigError("config: sweep '" + key + "' expects a list of numbers");
  }
}

std::vector<double> RunConfig::reals(const std::string& key, std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  try {
    return parse_list(values.at(key));
  } catch (const ConfigError&) {
    throw ConfigError("config: '" + key + "' expects a list of numbers");
  }
}

std::filesystem::path RunConfig::path(const std::string& key) const {
  std::filesystem::path p = text(key);
  if (p.is_relative()) p = base_dir / p;
  if (!std::filesystem::exists(p)) throw ConfigError("config: file for '" + key + "' not found: " + p.string());
  return p;
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw ConfigError("config: this command is stochastic and needs a seed");
  return *seed;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.base_dir = base_dir;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::string section;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("config line " + std::to_string(line_no) + ": bad section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "sweep")
        throw ConfigError("config line " + std::to_string(line_no) + ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    auto& target = section.empty() ? cfg.values : cfg.sweep;
    if (!target.emplace(key, value).second)
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  cfg.command = cfg.text("command", "");
  if (cfg.has("seed")) cfg.seed = static_cast<std::uint64_t>(cfg.integer("seed", 0));
  if (cfg.has("out")) cfg.output_dir = cfg.text("out");
  if (cfg.has("threads")) cfg.threads = static_cast<unsigned>(cfg.integer("threads", 0));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace kglab::runner
