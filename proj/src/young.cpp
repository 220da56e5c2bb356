#include "gflap/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gflap/detail/fastpow.hpp"
#include "gflap/errors.hpp"
#include "gflap/quadrature.hpp"

namespace gflap {

using detail::pow_abs;

YoungFunction YoungFunction::power(double p, bool outside_hypotheses) {
  const bool ok = outside_hypotheses ? p >= 2.0 : p > 2.0;
  require(std::isfinite(p) && ok, ErrorKind::RejectedParameter,
          "power family needs p > 2 (p >= 2 with the outside-hypotheses flag), "
          "got p = " + std::to_string(p));
  YoungFunction yf;
  std::ostringstream name;
  name << "power(p=" << p << ")";
  yf.name_ = name.str();
  yf.lambda_ = p - 1.0;
  yf.Lambda_ = p - 1.0;
  yf.terms_ = {{1.0, p - 1.0}};
  yf.descriptor_ = {{"family", "power"}, {"params", {{"p", p}}}};
  if (outside_hypotheses) yf.descriptor_["outside_hypotheses"] = true;
  return yf;
}

YoungFunction YoungFunction::power_sum(double p, double q, double a, double b) {
  require(p > 2.0 && q > 2.0, ErrorKind::RejectedParameter,
          "power_sum needs p, q > 2");
  require(a >= 0.0 && b >= 0.0 && a + b > 0.0, ErrorKind::RejectedParameter,
          "power_sum needs a, b >= 0 and a + b > 0");
  YoungFunction yf;
  std::ostringstream name;
  name << "power_sum(p=" << p << ",q=" << q << ",a=" << a << ",b=" << b << ")";
  yf.name_ = name.str();
  // A vanishing coefficient is the degenerate limit: the family collapses to
  // the surviving power and so do its constants.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (a > 0.0) {
    yf.terms_.push_back({a, p - 1.0});
    lo = std::min(lo, p - 1.0);
    hi = std::max(hi, p - 1.0);
  }
  if (b > 0.0) {
    yf.terms_.push_back({b, q - 1.0});
    lo = std::min(lo, q - 1.0);
    hi = std::max(hi, q - 1.0);
  }
  yf.lambda_ = lo;
  yf.Lambda_ = hi;
  yf.descriptor_ = {{"family", "power_sum"},
                    {"params", {{"p", p}, {"q", q}, {"a", a}, {"b", b}}}};
  return yf;
}

YoungFunction YoungFunction::custom(std::string name, Scalar g, Scalar g_prime,
                                    double lambda, double Lambda, Scalar G) {
  require(static_cast<bool>(g) && static_cast<bool>(g_prime),
          ErrorKind::RejectedParameter, "custom Young function needs g and g'");
  require(lambda > 0.0 && Lambda >= lambda, ErrorKind::RejectedParameter,
          "custom Young function needs 0 < lambda <= Lambda");
  YoungFunction yf;
  yf.name_ = std::move(name);
  yf.lambda_ = lambda;
  yf.Lambda_ = Lambda;
  auto c = std::make_shared<Custom>();
  c->g = std::move(g);
  c->g_prime = std::move(g_prime);
  c->G = std::move(G);
  yf.custom_ = std::move(c);
  yf.descriptor_ = {{"family", "custom"}, {"name", yf.name_}};
  return yf;
}

YoungFunction YoungFunction::rescaled(double R, double s) const {
  require(R > 0.0 && s > 0.0 && s < 1.0, ErrorKind::RejectedParameter,
          "rescaling needs R > 0 and s in (0,1)");
  const double c = std::pow(R, -s);
  YoungFunction yf = *this;
  std::ostringstream name;
  name << name_ << "@R=" << R;
  yf.name_ = name.str();
  if (is_power_series()) {
    for (PowerTerm& term : yf.terms_) term.coeff *= std::pow(c, term.exponent);
  } else {
    auto base = custom_;
    auto scaled = std::make_shared<Custom>();
    scaled->g = [base, c](double t) { return base->g(c * t); };
    scaled->g_prime = [base, c](double t) { return c * base->g_prime(c * t); };
    if (base->G)
      scaled->G = [base, c](double t) { return base->G(c * t) / c; };
    yf.custom_ = std::move(scaled);
  }
  yf.descriptor_ = {{"family", "rescaled"}, {"base", descriptor_}, {"R", R},
                    {"s", s}};
  return yf;
}

double YoungFunction::g(double t) const {
  if (is_power_series()) {
    double v = 0.0;
    for (const PowerTerm& term : terms_)
      v += term.coeff * pow_abs(t, term.exponent);
    return t < 0.0 ? -v : v;
  }
  const double v = custom_->g(std::abs(t));
  return t < 0.0 ? -v : v;
}

double YoungFunction::g_prime(double t) const {
  const double a = std::abs(t);
  if (is_power_series()) {
    double v = 0.0;
    for (const PowerTerm& term : terms_)
      v += term.coeff * term.exponent * pow_abs(a, term.exponent - 1.0);
    return v;
  }
  return custom_->g_prime(a);
}

double YoungFunction::G(double t) const {
  const double a = std::abs(t);
  if (is_power_series()) {
    double v = 0.0;
    for (const PowerTerm& term : terms_)
      v += term.coeff * pow_abs(a, term.exponent + 1.0) / (term.exponent + 1.0);
    return v;
  }
  if (custom_->G) return custom_->G(a);
  if (a == 0.0) return 0.0;
  return quad::integrate([this](double x) { return custom_->g(x); }, 0.0, a,
                         1e-12, 1e-13);
}

double YoungFunction::log_moment(double T) const {
  const double a = std::abs(T);
  if (a == 0.0) return 0.0;
  if (is_power_series()) {
    double v = 0.0;
    for (const PowerTerm& term : terms_) {
      const double p = term.exponent + 1.0;
      v += term.coeff * pow_abs(a, p) / (p * p);
    }
    return v;
  }
  return quad::integrate([this](double x) { return x > 0 ? G(x) / x : 0.0; },
                         0.0, a, 1e-12, 1e-12);
}

double YoungFunction::g_inverse(double v) const {
  require(v >= 0.0 && std::isfinite(v), ErrorKind::Domain,
          "g_inverse needs v >= 0");
  if (v == 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::max(1.0, v);
  for (int k = 0; g(hi) < v; ++k) {
    require(k < 2000, ErrorKind::NumericalFailure,
            "g_inverse could not bracket the root");
    lo = hi;
    hi *= 2.0;
  }
  for (int k = 0; k < 80; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < v)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double YoungFunction::conjugate(double w) const {
  require(w >= 0.0 && std::isfinite(w), ErrorKind::Domain,
          "conjugate needs w >= 0");
  if (w == 0.0) return 0.0;
  const double t = g_inverse(w);
  return w * t - G(t);
}

std::pair<double, double> estimate_ellipticity(const YoungFunction& yf,
                                               double t_min, double t_max,
                                               int n_samples) {
  require(t_min > 0.0 && t_max > t_min && n_samples >= 2,
          ErrorKind::Domain,
          "estimate_ellipticity needs 0 < t_min < t_max and n_samples >= 2");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const double step = std::log(t_max / t_min) / (n_samples - 1);
  for (int k = 0; k < n_samples; ++k) {
    const double t = t_min * std::exp(step * k);
    const double gt = yf.g(t);
    require(gt > 0.0, ErrorKind::InvalidYoungFunction,
            "g vanishes at t = " + std::to_string(t));
    const double ratio = t * yf.g_prime(t) / gt;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

namespace {

// Tracks the worst relative slack for one inequality "lhs <= rhs".
class SlackTracker {
 public:
  SlackTracker(std::string name, double rtol) : rtol_(rtol) {
    rec_.name = std::move(name);
    rec_.max_violation = -std::numeric_limits<double>::infinity();
  }

  void le(double lhs, double rhs) {
    ++rec_.samples;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    double v = (lhs - rhs) / scale;
    if (!std::isfinite(lhs) || !std::isfinite(rhs))
      v = std::numeric_limits<double>::infinity();
    if (v > rec_.max_violation) {
      rec_.max_violation = v;
      worst_lhs_ = lhs;
      worst_rhs_ = rhs;
    }
  }

  CheckRecord finish() {
    if (rec_.samples == 0) rec_.max_violation = 0.0;
    rec_.pass = rec_.max_violation <= rtol_;
    if (!rec_.pass) {
      std::ostringstream os;
      os.precision(17);
      os << "worst sample lhs=" << worst_lhs_ << " rhs=" << worst_rhs_;
      rec_.detail = os.str();
    }
    return rec_;
  }

 private:
  CheckRecord rec_;
  double rtol_;
  double worst_lhs_ = 0.0;
  double worst_rhs_ = 0.0;
};

}  // namespace

Report check_inequality_suite(const YoungFunction& yf, std::int64_t n_samples,
                              std::uint64_t seed, double rtol) {
  require(n_samples >= 1, ErrorKind::Configuration, "n_samples must be >= 1");
  Report report;
  report.title = "young-inequality-suite";
  report.extra = {{"family", yf.name()},
                  {"lambda", yf.lambda()},
                  {"Lambda", yf.Lambda()},
                  {"samples", n_samples},
                  {"seed", seed},
                  {"rtol", rtol}};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return lo * std::exp(unit(rng) * std::log(hi / lo));
  };
  auto sample_t = [&] { return log_uniform(1e-3, 1e3); };

  const double lam = yf.lambda();
  const double Lam = yf.Lambda();
  const double pm = yf.p_minus();
  const double pp = yf.p_plus();
  const std::int64_t n = n_samples;

  // Structural conditions on g.
  {
    SlackTracker g1("g1_positive", rtol);
    SlackTracker g2("g2_nondecreasing", rtol);
    SlackTracker g4("g4_convex", rtol);
    SlackTracker ell("L_ellipticity", rtol);
    SlackTracker ep("eq_p_bounds", rtol);
    for (std::int64_t k = 0; k < n; ++k) {
      const double t1 = sample_t();
      const double t2 = sample_t();
      const double lo = std::min(t1, t2);
      const double hi = std::max(t1, t2);
      g1.le(0.0, yf.g(t1) > 0.0 ? yf.g(t1) : -1.0);
      g2.le(yf.g(lo), yf.g(hi));
      g4.le(yf.g(0.5 * (t1 + t2)), 0.5 * (yf.g(t1) + yf.g(t2)));
      const double r = t1 * yf.g_prime(t1) / yf.g(t1);
      ell.le(lam, r);
      ell.le(r, Lam);
      const double q = t1 * yf.g(t1) / yf.G(t1);
      ep.le(pm, q);
      ep.le(q, pp);
    }
    report.records.push_back(g1.finish());
    report.records.push_back(g2.finish());
    report.records.push_back(g4.finish());
    report.records.push_back(ell.finish());
    report.records.push_back(ep.finish());

    SlackTracker pgt2("p_minus_gt_2", 0.0);
    pgt2.le(2.0 * (1.0 + 1e-15), pm);
    CheckRecord rec = pgt2.finish();
    rec.pass = pm > 2.0;
    report.records.push_back(rec);
  }

  // (minmax1), (minmax2).
  {
    SlackTracker mm1("minmax1", rtol);
    SlackTracker mm2("minmax2", rtol);
    for (std::int64_t k = 0; k < n; ++k) {
      const double t = sample_t();
      const double alpha = log_uniform(1e-6, 1e3);
      const double gt = yf.g(t), gat = yf.g(alpha * t);
      const double al = std::pow(alpha, lam), aL = std::pow(alpha, Lam);
      mm1.le(std::min(al, aL) * gt, gat);
      mm1.le(gat, std::max(al, aL) * gt);
      const double Gt = yf.G(t), Gat = yf.G(alpha * t);
      const double bl = std::pow(alpha, pm), bL = std::pow(alpha, pp);
      mm2.le(std::min(bl, bL) * Gt, Gat);
      mm2.le(Gat, std::max(bl, bL) * Gt);
    }
    report.records.push_back(mm1.finish());
    report.records.push_back(mm2.finish());
  }

  // (growthg1), (growthg2) with constants calibrated at t = 1. For t < 1 the
  // roles of the two exponents swap, so the check uses min/max of powers.
  {
    SlackTracker gg1("growthg1", rtol);
    SlackTracker gg2("growthg2", rtol);
    const double g1 = yf.g(1.0), G1 = yf.G(1.0);
    for (std::int64_t k = 0; k < n; ++k) {
      const double t = sample_t();
      const double tl = std::pow(t, lam), tL = std::pow(t, Lam);
      gg1.le(g1 * std::min(tl, tL), yf.g(t));
      gg1.le(yf.g(t), g1 * std::max(tl, tL));
      const double sl = std::pow(t, pm), sL = std::pow(t, pp);
      gg2.le(G1 * std::min(sl, sL), yf.G(t));
      gg2.le(yf.G(t), G1 * std::max(sl, sL));
    }
    report.records.push_back(gg1.finish());
    report.records.push_back(gg2.finish());
  }

  // g(a-b) - g(a) <= -2^{1-Lambda} g(b).
  {
    SlackTracker tr("lema0_difference_lower", rtol);
    const double c = std::pow(2.0, 1.0 - Lam);
    for (std::int64_t k = 0; k < n; ++k) {
      const double a = sample_t();
      const double b = sample_t();
      tr.le(yf.g(a - b) - yf.g(a), -c * yf.g(b));
    }
    report.records.push_back(tr.finish());
  }

  // g(a) - g(a-b) <= C_M max(b, g(b)) for |a| <= M. The mean value point
  // lies in (-2M, M), so b <= M needs g'(2M); b > M gives
  // g(M) + g(M+b) <= (1 + 2^Lambda) g(b). The constant with g'(M) and
  // (g(M)+g(2M))/g(M) is tracked separately and does not gate the suite.
  {
    SlackTracker tr("lema0bis_difference_upper", rtol);
    double literal_violation = -std::numeric_limits<double>::infinity();
    std::int64_t literal_failures = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      const double M = log_uniform(1e-2, 1e2);
      const double a = M * (2.0 * unit(rng) - 1.0);
      const double b = sample_t();
      const double lhs = yf.g(a) - yf.g(a - b);
      const double mb = std::max(b, yf.g(b));
      const double CM = std::max(yf.g_prime(2.0 * M), 1.0 + std::pow(2.0, Lam));
      tr.le(lhs, CM * mb);
      const double CM_literal =
          std::max(yf.g_prime(M), (yf.g(M) + yf.g(2.0 * M)) / yf.g(M));
      const double rhs = CM_literal * mb;
      const double v = (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
      literal_violation = std::max(literal_violation, v);
      if (v > rtol) ++literal_failures;
    }
    report.records.push_back(tr.finish());
    report.extra["lema0bis_literal_constant"] = {
        {"max_violation", literal_violation}, {"failures", literal_failures}};
  }

  // g(a+b) <= (1+theta)^Lambda g(a) + C_theta g(b), C_theta = 2^{j Lambda}.
  {
    SlackTracker tr("lema_separa", rtol);
    for (std::int64_t k = 0; k < n; ++k) {
      const double a = sample_t();
      const double b = sample_t();
      double theta = unit(rng);
      if (theta <= 0.0) theta = 0.5;
      const double j = std::ceil(std::log2(1.0 / theta + 1.0));
      const double Ct = std::pow(2.0, j * Lam);
      tr.le(yf.g(a + b),
            std::pow(1.0 + theta, Lam) * yf.g(a) + Ct * yf.g(b));
    }
    report.records.push_back(tr.finish());
  }

  // g^{-1}(a+b) <= 2^{1/lambda} (g^{-1}(a) + g^{-1}(b)).
  {
    SlackTracker tr("delta2_inverse", rtol);
    const double c = std::pow(2.0, 1.0 / lam);
    for (std::int64_t k = 0; k < n; ++k) {
      const double a = sample_t();
      const double b = sample_t();
      tr.le(yf.g_inverse(a + b), c * (yf.g_inverse(a) + yf.g_inverse(b)));
    }
    report.records.push_back(tr.finish());
  }

  // Doubling for g and G.
  {
    SlackTracker dg("delta2_g", rtol);
    SlackTracker dG("delta2_G", rtol);
    const double cg = std::pow(2.0, Lam), cG = std::pow(2.0, pp);
    for (std::int64_t k = 0; k < n; ++k) {
      const double t = sample_t();
      dg.le(yf.g(2.0 * t), cg * yf.g(t));
      dG.le(yf.G(2.0 * t), cG * yf.G(t));
    }
    report.records.push_back(dg.finish());
    report.records.push_back(dG.finish());
  }
  return report;
}

Report check_conjugate_sweep(const YoungFunction& yf, int grid,
                             double gap_tol) {
  require(grid >= 2, ErrorKind::Configuration, "conjugate grid must be >= 2");
  Report report;
  report.title = "conjugate-sweep";
  report.extra = {{"family", yf.name()}, {"grid", grid}, {"gap_tol", gap_tol}};

  const double lo = 1e-3, hi = 1e3;
  const double step = std::log(hi / lo) / (grid - 1);
  std::vector<double> axis(grid);
  for (int k = 0; k < grid; ++k) axis[k] = lo * std::exp(step * k);

  std::vector<double> Gt(grid), Gw(grid);
  for (int k = 0; k < grid; ++k) {
    Gt[k] = yf.G(axis[k]);
    Gw[k] = yf.conjugate(axis[k]);
  }
  SlackTracker young("young_inequality", 1e-12);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) young.le(axis[i] * axis[j], Gt[i] + Gw[j]);
  report.records.push_back(young.finish());

  CheckRecord gap{"equality_gap_at_w_eq_g(t)", 0, 0.0, true, ""};
  for (int i = 0; i < grid; ++i) {
    const double t = axis[i];
    const double w = yf.g(t);
    const double value = Gt[i] + yf.conjugate(w) - t * w;
    const double rel = std::abs(value) / std::max(1.0, t * w);
    gap.max_violation = std::max(gap.max_violation, rel);
    ++gap.samples;
  }
  gap.pass = gap.max_violation < gap_tol;
  report.records.push_back(gap);
  return report;
}

YoungFunction young_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::Configuration,
          "young function config must be an object");
  require(j.contains("family") && j["family"].is_string(),
          ErrorKind::Configuration, "young function config needs 'family'");
  const std::string family = j["family"];
  const Json params = j.value("params", Json::object());
  auto number = [&](const char* key) -> double {
    require(params.contains(key) && params[key].is_number(),
            ErrorKind::Configuration,
            "young function '" + family + "' needs numeric params." + key);
    return params[key].get<double>();
  };
  if (family == "power")
    return YoungFunction::power(number("p"),
                                j.value("outside_hypotheses", false));
  if (family == "power_sum")
    return YoungFunction::power_sum(number("p"), number("q"),
                                    params.value("a", 1.0),
                                    params.value("b", 1.0));
  if (family == "rescaled") {
    require(j.contains("base"), ErrorKind::Configuration,
            "rescaled young function needs 'base'");
    return young_from_json(j["base"]).rescaled(j.at("R").get<double>(),
                                               j.at("s").get<double>());
  }
  if (family == "test_nonconvex") {
    require(j.value("test_hook", false), ErrorKind::Configuration,
            "family 'test_nonconvex' is a test hook and needs test_hook=true");
    // g(t) = t^2 (1 + 0.3 sin(4 ln t)): positive and increasing, but neither
    // convex nor within any Lieberman band with lambda > 1.
    auto g = [](double t) {
      return t > 0 ? t * t * (1.0 + 0.3 * std::sin(4.0 * std::log(t))) : 0.0;
    };
    auto gp = [](double t) {
      if (t <= 0) return 0.0;
      const double L = std::log(t);
      return 2.0 * t * (1.0 + 0.3 * std::sin(4.0 * L)) +
             1.2 * t * std::cos(4.0 * L);
    };
    YoungFunction yf = YoungFunction::custom("test_nonconvex", g, gp, 1.5, 2.5);
    yf.descriptor_ = j;
    return yf;
  }
  fail(ErrorKind::Configuration, "unknown young function family '" + family + "'");
}

Json young_to_json(const YoungFunction& yf) { return yf.descriptor_; }

}  // namespace gflap
