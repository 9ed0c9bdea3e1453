#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace kglab::harness {

using Json = nlohmann::ordered_json;

// One line of a verification report; field order is fixed for byte-stable output.
struct VerificationRecord {
  std::string name;
  Json parameters = Json::object();
  Json observed = Json::object();
  std::string bound;
  bool pass = false;
  std::uint64_t seed = 0;

  Json to_json() const;
  std::string to_line() const;
};

// max/min of the positive entries; 0 when fewer than one positive entry
double spread(const std::vector<double>& values);

}  // namespace kglab::harness
