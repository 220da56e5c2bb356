#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace gflap {

using Json = nlohmann::json;

/// One verified (or measured) statement. `max_violation` is the largest
/// signed slack seen: positive means the statement was violated by that much
/// (relative units unless the record says otherwise).
struct CheckRecord {
  std::string name;
  std::size_t samples = 0;
  double max_violation = 0.0;
  bool pass = true;
  std::string detail;
};

struct Report {
  std::string title;
  std::vector<CheckRecord> records;
  Json extra = Json::object();

  bool pass() const;
  const CheckRecord* find(const std::string& name) const;
  Json to_json() const;
};

}  // namespace gflap
