#include <algorithm>
#include <cmath>

#include "criteria.hpp"
#include "tolerances.hpp"

namespace gflap::acceptance {

namespace {

std::vector<YoungFunction> suite_families() {
  return {YoungFunction::power(2.5), YoungFunction::power(3.0),
          YoungFunction::power(4.0), YoungFunction::power_sum(3.0, 4.0, 1.0, 1.0)};
}

}  // namespace

CriterionResult c01_young_suite(const Options& opt) {
  Stopwatch clock;
  CriterionResult r;
  r.pass = true;
  double worst = -INFINITY;
  std::string failing;
  for (const auto& yf : suite_families()) {
    const Report rep = check_inequality_suite(yf, tol::kSuiteSamples, opt.seed, tol::kSuiteRtol);
    r.details[yf.name()] = rep.to_json();
    for (const auto& rec : rep.records) {
      worst = std::max(worst, rec.max_violation);
      if (!rec.pass) failing += " " + yf.name() + ":" + rec.name;
    }
    r.pass = r.pass && rep.pass();
  }
  const double t = clock.seconds();
  r.pass = r.pass && t < tol::kSuiteSeconds;
  r.summary = "4 families x 1e5 samples, worst signed slack " + num(worst) + " (limit " +
              num(tol::kSuiteRtol) + "), " + num(t) + " s (limit 30 s)" +
              (failing.empty() ? "" : "; failing:" + failing);
  return r;
}

CriterionResult c02_conjugate(const Options&) {
  CriterionResult r;
  r.pass = true;
  double worst_gap = 0.0;
  for (const auto& yf : suite_families()) {
    const Report rep = check_conjugate_sweep(yf, tol::kConjugateGrid, tol::kConjugateGap);
    r.details[yf.name()] = rep.to_json();
    r.pass = r.pass && rep.pass();
    if (const auto* gap = rep.find("equality_gap_at_w_eq_g(t)")) worst_gap = std::max(worst_gap, gap->max_violation);
  }
  // Classical conjugate of t^3/3.
  const YoungFunction p3 = YoungFunction::power(3.0);
  double worst_rel = 0.0;
  for (int k = 0; k < tol::kConjugateGrid; ++k) {
    const double w = std::pow(10.0, -3.0 + 6.0 * k / (tol::kConjugateGrid - 1));
    const double exact = 2.0 / 3.0 * std::pow(w, 1.5);
    worst_rel = std::max(worst_rel, std::abs(p3.conjugate(w) - exact) / exact);
  }
  r.details["power3_closed_form_max_rel"] = worst_rel;
  r.pass = r.pass && worst_rel <= tol::kConjugateClosedForm;
  r.summary = "Young inequality on 200x200 grids holds; equality gap " + num(worst_gap) +
              " (limit 1e-8); power 3 vs (2/3)w^1.5 rel " + num(worst_rel) + " (limit 1e-8)";
  return r;
}

}  // namespace gflap::acceptance
