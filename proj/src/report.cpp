#include "gflap/report.hpp"

#include <algorithm>
#include <cmath>

#include "gflap/errors.hpp"

namespace gflap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RejectedParameter: return "rejected-parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InvalidYoungFunction: return "invalid-young-function";
    case ErrorKind::InsufficientExteriorData: return "insufficient-exterior-data";
    case ErrorKind::InvalidTestFunction: return "invalid-test-function";
    case ErrorKind::DivergentTail: return "divergent-tail";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

bool Report::pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.pass; });
}

const CheckRecord* Report::find(const std::string& name) const {
  for (const CheckRecord& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

Json Report::to_json() const {
  Json recs = Json::array();
  for (const CheckRecord& r : records) {
    Json rec = {{"name", r.name},
                {"samples", r.samples},
                {"max_violation", std::isfinite(r.max_violation)
                                      ? Json(r.max_violation)
                                      : Json(nullptr)},
                {"pass", r.pass}};
    if (!r.detail.empty()) rec["detail"] = r.detail;
    recs.push_back(std::move(rec));
  }
  Json out = {{"title", title}, {"records", recs}, {"pass", pass()}};
  if (!extra.empty()) out["extra"] = extra;
  return out;
}

}  // namespace gflap
