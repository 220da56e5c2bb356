#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace gflap::oracle {

namespace {

struct Model {
  double p, s, f, h;
  int N;
  std::vector<double> out_coeff;  // 2 h / (s p) (rho_L^{-sp} + rho_R^{-sp})
  std::vector<double> self_w, self_a;

  double G(double t) const { return std::pow(std::abs(t), p) / p; }
  double g(double t) const { return std::pow(std::abs(t), p - 2) * t; }
  double gp(double t) const { return (p - 1) * std::pow(std::abs(t), p - 2); }

  Model(double p_, double s_, double f_, int nodes) : p(p_), s(s_), f(f_), N(nodes) {
    h = 2.0 / (N - 1);
    out_coeff.resize(N);
    for (int i = 0; i < N; ++i) {
      const double x = -1.0 + i * h;
      const double rl = x + 1.0 + 0.5 * h, rr = 1.0 + 0.5 * h - x;
      out_coeff[i] = 2.0 * h / (s * p) * (std::pow(rl, -s * p) + std::pow(rr, -s * p));
    }
    const double q = h / 4.0;
    for (int k = -3; k <= 3; ++k) {
      if (k == 0) continue;
      const double ak = std::abs(k);
      self_w.push_back((4.0 - ak) * q * q / (ak * q));
      self_a.push_back(k * std::pow(q, 1.0 - s) * std::pow(ak, -s));
    }
  }

  double energy(const std::vector<double>& u) const {
    double E = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        const double r = (j - i) * h;
        E += 2.0 * h * h / r * G((u[i] - u[j]) * std::pow(r, -s));
      }
    for (int c = 0; c < N; ++c) {
      const double gam = (at(u, c + 1) - at(u, c - 1)) / (2.0 * h);
      for (std::size_t k = 0; k < self_w.size(); ++k) E += self_w[k] * G(gam * self_a[k]);
    }
    for (int i = 0; i < N; ++i) E += out_coeff[i] * G(u[i]);
    for (int i = 1; i < N - 1; ++i) E -= h * f * u[i];
    return E;
  }

  static double at(const std::vector<double>& u, int i) {
    return i < 0 || i >= static_cast<int>(u.size()) ? 0.0 : u[i];
  }

  // Gradient and Hessian with respect to all N values.
  void derivatives(const std::vector<double>& u, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const {
    grad.setZero(N);
    hess.setZero(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        const double r = (j - i) * h;
        const double rho = std::pow(r, -s);
        const double w = 2.0 * h * h / r;
        const double D = (u[i] - u[j]) * rho;
        const double d1 = w * g(D) * rho, d2 = w * gp(D) * rho * rho;
        grad[i] += d1;
        grad[j] -= d1;
        hess(i, i) += d2;
        hess(j, j) += d2;
        hess(i, j) -= d2;
        hess(j, i) -= d2;
      }
    for (int c = 0; c < N; ++c) {
      const double gam = (at(u, c + 1) - at(u, c - 1)) / (2.0 * h);
      double t1 = 0.0, t2 = 0.0;
      for (std::size_t k = 0; k < self_w.size(); ++k) {
        t1 += self_w[k] * g(gam * self_a[k]) * self_a[k];
        t2 += self_w[k] * gp(gam * self_a[k]) * self_a[k] * self_a[k];
      }
      const int idx[2] = {c + 1, c - 1};
      const double sgn[2] = {1.0 / (2.0 * h), -1.0 / (2.0 * h)};
      for (int a = 0; a < 2; ++a) {
        if (idx[a] < 0 || idx[a] >= N) continue;
        grad[idx[a]] += t1 * sgn[a];
        for (int b = 0; b < 2; ++b)
          if (idx[b] >= 0 && idx[b] < N) hess(idx[a], idx[b]) += t2 * sgn[a] * sgn[b];
      }
    }
    for (int i = 0; i < N; ++i) {
      grad[i] += out_coeff[i] * g(u[i]);
      hess(i, i) += out_coeff[i] * gp(u[i]);
    }
    for (int i = 1; i < N - 1; ++i) grad[i] -= h * f;
  }
};

}  // namespace

NewtonResult p_laplacian_newton_1d(double p, double s, double f, int nodes,
                                   double tol, int max_iters) {
  const Model m(p, s, f, nodes);
  const int N = nodes, F = N - 2;
  std::vector<double> u(N, 0.0);
  for (int i = 1; i < N - 1; ++i) {
    const double x = -1.0 + i * m.h;
    u[i] = 0.5 * std::pow(1.0 - x * x, s);
  }
  NewtonResult res;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  double E = m.energy(u);
  for (int it = 0; it < max_iters; ++it) {
    m.derivatives(u, grad, hess);
    const Eigen::VectorXd gF = grad.segment(1, F);
    res.grad_norm = gF.cwiseAbs().maxCoeff() / m.h;
    res.iterations = it;
    if (res.grad_norm <= tol) break;
    const Eigen::MatrixXd H = hess.block(1, 1, F, F);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    Eigen::VectorXd step = -ldlt.solve(gF);
    if (ldlt.info() != Eigen::Success || gF.dot(step) >= 0) step = -gF;
    double t = 1.0;
    std::vector<double> trial(N, 0.0);
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      for (int i = 0; i < F; ++i) trial[i + 1] = u[i + 1] + t * step[i];
      const double Et = m.energy(trial);
      if (Et <= E + 1e-4 * t * gF.dot(step) ||
          std::abs(Et - E) <= 1e-15 * std::max(1.0, std::abs(E)))
        break;
    }
    u = trial;
    E = m.energy(u);
  }
  res.u = u;
  return res;
}

}  // namespace gflap::oracle
