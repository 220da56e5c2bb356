#include "gflap/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gflap::quad {

constexpr std::size_t kMaxPanels = 400;

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panel {
  double a, b, value, error;
  unsigned depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 unsigned depth) {
  double err = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err, depth};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, unsigned max_depth) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol, rel_tol, max_depth);
  if (std::isinf(a) || std::isinf(b)) {
    if (std::isinf(a) && std::isinf(b))
      return integrate([&](double t) { return f(t / (1 - t * t)) * (1 + t * t) / ((1 - t * t) * (1 - t * t)); },
                       -1.0, 1.0, abs_tol, rel_tol, max_depth);
    if (std::isinf(b))
      return integrate([&](double t) { return f(a + t / (1 - t)) / ((1 - t) * (1 - t)); },
                       0.0, 1.0, abs_tol, rel_tol, max_depth);
    return integrate([&](double t) { return f(b - t / (1 - t)) / ((1 - t) * (1 - t)); },
                     0.0, 1.0, abs_tol, rel_tol, max_depth);
  }
  // Globally adaptive: always bisect the panel with the largest error. The
  // panel budget bounds the cost when roundoff in f keeps the error estimate
  // from shrinking.
  std::priority_queue<Panel> heap;
  heap.push(make_panel(f, a, b, 0));
  double value = heap.top().value, error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) &&
         heap.size() < kMaxPanels) {
    const Panel worst = heap.top();
    if (worst.depth >= max_depth) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(f, worst.a, mid, worst.depth + 1);
    const Panel right = make_panel(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to drop the drift of the running updates.
  value = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    heap.pop();
  }
  return value;
}

double integrate_split(const std::function<double(double)>& f, double a,
                       double b, std::span<const double> breakpoints,
                       double abs_tol, double rel_tol, unsigned max_depth) {
  const bool flipped = a > b;
  const double lo = flipped ? b : a;
  const double hi = flipped ? a : b;
  std::vector<double> cuts{lo};
  for (double c : breakpoints)
    if (c > lo && c < hi) cuts.push_back(c);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double per_piece = abs_tol / std::max<std::size_t>(1, cuts.size() - 1);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    total += integrate(f, cuts[k], cuts[k + 1], per_piece, rel_tol, max_depth);
  return flipped ? -total : total;
}

namespace {

GaussRule build_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Newton on P_order starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

}  // namespace gflap::quad
