#include "gflap/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gflap/detail/fastpow.hpp"
#include "gflap/errors.hpp"
#include "gflap/parallel.hpp"
#include "gflap/quadrature.hpp"

namespace gflap {

namespace {

constexpr std::size_t kBlocks = 32;
constexpr int kEdgePanels = 8;

// G and g for a power series with a fixed number of terms.
template <int Terms>
struct PowerKernel {
  double a[Terms];
  double e[Terms];

  double G(double t) const {
    const double at = std::abs(t);
    double v = 0.0;
    for (int m = 0; m < Terms; ++m)
      v += a[m] * at * detail::pow_abs(at, e[m]) / (e[m] + 1.0);
    return v;
  }
  void both(double t, double& G_out, double& g_out) const {
    const double at = std::abs(t);
    double G = 0.0, g = 0.0;
    for (int m = 0; m < Terms; ++m) {
      const double gm = a[m] * detail::pow_abs(at, e[m]);
      g += gm;
      G += gm * at / (e[m] + 1.0);
    }
    G_out = G;
    g_out = t < 0 ? -g : g;
  }
};

struct CustomKernel {
  const YoungFunction* yf;
  double G(double t) const { return yf->G(t); }
  void both(double t, double& G_out, double& g_out) const {
    G_out = yf->G(t);
    g_out = yf->g(t);
  }
};

void add_edge_samples(std::vector<std::pair<double, double>>& out, double a,
                      double t_lo, double t_hi) {
  // Directions through one edge at perpendicular distance a; the angle is
  // measured from the edge normal, so rho = a / cos(theta).
  if (t_hi <= t_lo) return;
  const auto& rule = quad::gauss_legendre(16);
  const double width = (t_hi - t_lo) / kEdgePanels;
  for (int k = 0; k < kEdgePanels; ++k) {
    const double mid = t_lo + (k + 0.5) * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double th = mid + 0.5 * width * rule.nodes[q];
      out.emplace_back(0.5 * width * rule.weights[q], a / std::cos(th));
    }
  }
}

}  // namespace

std::vector<std::pair<double, double>> outer_angular_samples(const Box& region,
                                                             const Point& x) {
  std::vector<std::pair<double, double>> out;
  if (region.dim == 1) {
    out.emplace_back(1.0, x[0] - region.lo[0]);
    out.emplace_back(1.0, region.hi[0] - x[0]);
    return out;
  }
  const double dl = x[0] - region.lo[0], dr = region.hi[0] - x[0];
  const double db = x[1] - region.lo[1], dt = region.hi[1] - x[1];
  require(dl > 0 && dr > 0 && db > 0 && dt > 0, ErrorKind::Domain,
          "outer_angular_samples: point not inside the region");
  // Each edge subtends the angle between the two corners it joins.
  add_edge_samples(out, dr, -std::atan(db / dr), std::atan(dt / dr));
  add_edge_samples(out, dl, -std::atan(dt / dl), std::atan(db / dl));
  add_edge_samples(out, dt, -std::atan(dr / dt), std::atan(dl / dt));
  add_edge_samples(out, db, -std::atan(dl / db), std::atan(dr / db));
  return out;
}

double outer_angular_moment(const Box& region, const Point& x, double q) {
  double total = 0.0;
  for (const auto& [w, rho] : outer_angular_samples(region, x))
    total += w * std::pow(rho, -q);
  return total;
}

DiscreteModular::DiscreteModular(YoungFunction yf, Grid grid,
                                 std::vector<std::size_t> active, double s,
                                 bool include_outer)
    : yf_(std::move(yf)),
      grid_(std::move(grid)),
      active_(std::move(active)),
      s_(s),
      include_outer_(include_outer) {
  require(s_ > 0.0 && s_ < 1.0, ErrorKind::Domain,
          "DiscreteModular: s must lie in (0,1)");
  std::sort(active_.begin(), active_.end());
  active_.erase(std::unique(active_.begin(), active_.end()), active_.end());
  require(active_.empty() || active_.back() < grid_.size(), ErrorKind::Domain,
          "DiscreteModular: active index outside the grid");

  const int n = grid_.dim();
  const double h = grid_.h();
  const double hn = grid_.cell_volume();
  const int nx = grid_.nodes(0);
  const int ny = n == 2 ? grid_.nodes(1) : 1;
  stride_ = ny;

  rs_table_.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  w_table_.assign(rs_table_.size(), 0.0);
  for (int di = 0; di < nx; ++di)
    for (int dj = 0; dj < ny; ++dj) {
      if (di == 0 && dj == 0) continue;
      const double r = h * std::hypot(static_cast<double>(di), dj);
      const std::size_t k = static_cast<std::size_t>(di) * ny + dj;
      rs_table_[k] = std::pow(r, -s_);
      w_table_[k] = 2.0 * hn * hn * std::pow(r, -n);
    }

  const std::size_t F = active_.size();
  coords_.resize(F);
  for (std::size_t p = 0; p < F; ++p) {
    const auto c = grid_.coords(active_[p]);
    coords_[p] = {c[0], c[1]};
  }

  std::vector<std::ptrdiff_t> slot(grid_.size(), -1);
  for (std::size_t p = 0; p < F; ++p) slot[active_[p]] = static_cast<std::ptrdiff_t>(p);
  for (std::size_t idx = 0; idx < grid_.size(); ++idx)
    if (slot[idx] < 0) inactive_.push_back(idx);

  for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
    const auto c = grid_.coords(idx);
    const int i = c[0], j = c[1];
    auto at = [&](int a, int b) -> std::ptrdiff_t {
      if (a < 0 || a >= nx || b < 0 || b >= ny) return -1;
      return slot[grid_.index(a, b)];
    };
    SelfCell cell{slot[idx], n == 1 ? std::array<std::ptrdiff_t, 4>{at(i - 1, 0), at(i + 1, 0), -1, -1}
                                    : std::array<std::ptrdiff_t, 4>{at(i - 1, j), at(i + 1, j),
                                                                    at(i, j - 1), at(i, j + 1)}};
    if (cell.own >= 0 || cell.nb[0] >= 0 || cell.nb[1] >= 0 || cell.nb[2] >= 0 ||
        cell.nb[3] >= 0)
      self_cells_.push_back(cell);
  }

  // Self-interaction of a cell: 4^n subcells of side h/4, midpoint rule on
  // distinct subcell pairs, u linear inside the cell.
  const double hq = h / 4.0;
  const int kmax = 3;
  for (int kx = -kmax; kx <= kmax; ++kx)
    for (int ky = (n == 2 ? -kmax : 0); ky <= (n == 2 ? kmax : 0); ++ky) {
      if (kx == 0 && ky == 0) continue;
      const double mult = (4.0 - std::abs(kx)) * (n == 2 ? 4.0 - std::abs(ky) : 1.0);
      const double klen = std::hypot(static_cast<double>(kx), ky);
      const double scale = std::pow(hq, 1.0 - s_) * std::pow(klen, -s_);
      const double cell = n == 2 ? hq * hq : hq;
      const double weight = mult * cell * cell / std::pow(klen * hq, n);
      self_offsets_.push_back({kx * scale, ky * scale, weight});
    }

  // Interaction of active cells with inactive cells and with everything
  // beyond the cell region.
  if (yf_.is_power_series()) {
    const auto& terms = yf_.terms();
    const std::size_t M = terms.size();
    ext_coeff_.assign(F * M, 0.0);
    const Box region = grid_.cell_region();
    parallel_blocks(kBlocks, [&](std::size_t b) {
      const std::size_t lo = F * b / kBlocks, hi = F * (b + 1) / kBlocks;
      for (std::size_t p = lo; p < hi; ++p) {
        const auto [i, j] = coords_[p];
        for (std::size_t m = 0; m < M; ++m) {
          const double pm = terms[m].exponent + 1.0;
          double S = 0.0;
          for (std::size_t idx : inactive_) {
            const auto c = grid_.coords(idx);
            const double r = h * std::hypot(static_cast<double>(c[0] - i),
                                            static_cast<double>(c[1] - j));
            S += hn * hn * std::pow(r, -n - s_ * pm);
          }
          double A = 0.0;
          if (include_outer_)
            A = outer_angular_moment(region, grid_.node(active_[p]), s_ * pm) *
                hn / (s_ * pm);
          ext_coeff_[p * M + m] = S + A;
        }
      }
    });
  } else if (include_outer_) {
    const Box region = grid_.cell_region();
    outer_samples_.resize(F);
    for (std::size_t p = 0; p < F; ++p)
      outer_samples_[p] = outer_angular_samples(region, grid_.node(active_[p]));
  }

  // Blocks of the triangular pair loop with roughly equal pair counts.
  const std::size_t blocks = std::max<std::size_t>(1, std::min(kBlocks, F));
  const double total = 0.5 * static_cast<double>(F) * (F > 0 ? F - 1 : 0) + F;
  block_starts_.assign(1, 0);
  double acc = 0.0;
  for (std::size_t p = 0; p < F; ++p) {
    acc += static_cast<double>(F - 1 - p) + 1.0;
    if (acc >= total * static_cast<double>(block_starts_.size()) / blocks &&
        block_starts_.size() < blocks)
      block_starts_.push_back(p + 1);
  }
  if (block_starts_.back() != F) block_starts_.push_back(F);
}

double DiscreteModular::exterior_energy(std::size_t p, double v) const {
  if (v == 0.0) return 0.0;
  const double h = grid_.h();
  const double hn = grid_.cell_volume();
  const int n = grid_.dim();
  if (yf_.is_power_series()) {
    const auto& terms = yf_.terms();
    const std::size_t M = terms.size();
    double E = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      const double pm = terms[m].exponent + 1.0;
      E += terms[m].coeff / pm * detail::pow_abs(v, pm) * ext_coeff_[p * M + m];
    }
    return 2.0 * E;
  }
  const auto [i, j] = coords_[p];
  double E = 0.0;
  for (std::size_t idx : inactive_) {
    const auto c = grid_.coords(idx);
    const double r = h * std::hypot(static_cast<double>(c[0] - i),
                                    static_cast<double>(c[1] - j));
    E += hn * hn * std::pow(r, -n) * yf_.G(v * std::pow(r, -s_));
  }
  if (include_outer_)
    for (const auto& [w, rho] : outer_samples_[p])
      E += hn * w * yf_.log_moment(std::abs(v) * std::pow(rho, -s_)) / s_;
  return 2.0 * E;
}

double DiscreteModular::exterior_slope(std::size_t p, double v) const {
  if (v == 0.0) return 0.0;
  const double h = grid_.h();
  const double hn = grid_.cell_volume();
  const int n = grid_.dim();
  if (yf_.is_power_series()) {
    const auto& terms = yf_.terms();
    const std::size_t M = terms.size();
    double d = 0.0;
    for (std::size_t m = 0; m < M; ++m)
      d += terms[m].coeff * detail::pow_abs(v, terms[m].exponent) *
           ext_coeff_[p * M + m];
    return 2.0 * (v < 0 ? -d : d);
  }
  const auto [i, j] = coords_[p];
  double d = 0.0;
  for (std::size_t idx : inactive_) {
    const auto c = grid_.coords(idx);
    const double r = h * std::hypot(static_cast<double>(c[0] - i),
                                    static_cast<double>(c[1] - j));
    const double rs = std::pow(r, -s_);
    d += hn * hn * std::pow(r, -n) * yf_.g(v * rs) * rs;
  }
  if (include_outer_)
    for (const auto& [w, rho] : outer_samples_[p]) {
      const double T = std::abs(v) * std::pow(rho, -s_);
      d += hn * w * yf_.G(T) / (s_ * v);
    }
  return 2.0 * d;
}

template <class Kernel>
double DiscreteModular::evaluate(const Kernel& kernel,
                                 std::span<const double> x, double inv_scale,
                                 double* grad) const {
  const std::size_t F = active_.size();
  require(x.size() == F, ErrorKind::Domain,
          "DiscreteModular: value count does not match the active set");
  const std::size_t blocks = block_starts_.size() - 1;
  std::vector<double> energy(blocks, 0.0);
  std::vector<std::vector<double>> gbuf(grad ? blocks : 0);
  const double inv2h = 1.0 / (2.0 * grid_.h());
  const bool two_d = grid_.dim() == 2;

  parallel_blocks(blocks, [&](std::size_t b) {
    double* gb = nullptr;
    if (grad) {
      gbuf[b].assign(F, 0.0);
      gb = gbuf[b].data();
    }
    double E = 0.0;
    for (std::size_t p = block_starts_[b]; p < block_starts_[b + 1]; ++p) {
      const double up = x[p] * inv_scale;
      const auto [ip, jp] = coords_[p];
      double gp = 0.0;
      for (std::size_t q = p + 1; q < F; ++q) {
        const std::size_t k =
            static_cast<std::size_t>(std::abs(coords_[q][0] - ip)) * stride_ +
            static_cast<std::size_t>(std::abs(coords_[q][1] - jp));
        const double rs = rs_table_[k];
        const double D = (up - x[q] * inv_scale) * rs;
        if (gb) {
          double G, g;
          kernel.both(D, G, g);
          E += w_table_[k] * G;
          const double c = w_table_[k] * g * rs;
          gp += c;
          gb[q] -= c;
        } else {
          E += w_table_[k] * kernel.G(D);
        }
      }

      E += exterior_energy(p, up);
      if (gb) gb[p] += gp + exterior_slope(p, up);
    }

    const std::size_t S = self_cells_.size();
    auto val = [&](std::ptrdiff_t i) { return i < 0 ? 0.0 : x[i] * inv_scale; };
    for (std::size_t c = S * b / blocks; c < S * (b + 1) / blocks; ++c) {
      const auto& nb = self_cells_[c].nb;
      const double gx = (val(nb[1]) - val(nb[0])) * inv2h;
      const double gy = two_d ? (val(nb[3]) - val(nb[2])) * inv2h : 0.0;
      double dgx = 0.0, dgy = 0.0;
      for (const auto& o : self_offsets_) {
        const double arg = gx * o.kx + gy * o.ky;
        if (gb) {
          double G, g;
          kernel.both(arg, G, g);
          E += o.weight * G;
          dgx += o.weight * g * o.kx;
          dgy += o.weight * g * o.ky;
        } else {
          E += o.weight * kernel.G(arg);
        }
      }
      if (gb) {
        if (nb[1] >= 0) gb[nb[1]] += dgx * inv2h;
        if (nb[0] >= 0) gb[nb[0]] -= dgx * inv2h;
        if (two_d) {
          if (nb[3] >= 0) gb[nb[3]] += dgy * inv2h;
          if (nb[2] >= 0) gb[nb[2]] -= dgy * inv2h;
        }
      }
    }
    energy[b] = E;
  });

  double total = 0.0;
  for (double e : energy) total += e;
  if (grad) {
    std::fill(grad, grad + F, 0.0);
    for (const auto& buf : gbuf)
      for (std::size_t p = 0; p < F; ++p) grad[p] += buf[p];
  }
  return total;
}

namespace {

template <class Fn>
decltype(auto) with_kernel(const YoungFunction& yf, Fn&& fn) {
  const auto& t = yf.terms();
  if (t.size() == 1) {
    PowerKernel<1> k{{t[0].coeff}, {t[0].exponent}};
    return fn(k);
  }
  if (t.size() == 2) {
    PowerKernel<2> k{{t[0].coeff, t[1].coeff}, {t[0].exponent, t[1].exponent}};
    return fn(k);
  }
  CustomKernel k{&yf};
  return fn(k);
}

}  // namespace

double DiscreteModular::value(std::span<const double> x, double scale) const {
  require(scale > 0.0, ErrorKind::Domain, "modular: scale must be positive");
  return with_kernel(yf_, [&](const auto& k) {
    return evaluate(k, x, 1.0 / scale, nullptr);
  });
}

double DiscreteModular::value_and_gradient(std::span<const double> x,
                                           std::span<double> grad) const {
  require(grad.size() == active_.size(), ErrorKind::Domain,
          "DiscreteModular: gradient buffer has the wrong size");
  return with_kernel(yf_, [&](const auto& k) {
    return evaluate(k, x, 1.0, grad.data());
  });
}

double DiscreteModular::directional(std::span<const double> x,
                                    std::span<const double> dir) const {
  std::vector<double> grad(active_.size());
  value_and_gradient(x, grad);
  double d = 0.0;
  for (std::size_t p = 0; p < grad.size(); ++p) d += grad[p] * dir[p];
  return d;
}

std::vector<double> DiscreteModular::gather(std::span<const double> full) const {
  std::vector<double> x(active_.size());
  for (std::size_t p = 0; p < active_.size(); ++p) x[p] = full[active_[p]];
  return x;
}

std::vector<double> DiscreteModular::scatter(std::span<const double> x) const {
  std::vector<double> full(grid_.size(), 0.0);
  for (std::size_t p = 0; p < active_.size(); ++p) full[active_[p]] = x[p];
  return full;
}

}  // namespace gflap
