#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir::quad {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
template <typename Scalar = double>
struct Rule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

namespace detail {

template <typename Scalar>
Rule<Scalar> build_gauss_legendre(int n) {
  Rule<Scalar> r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton on P_n from the Tricomi initial guess
    Scalar z = std::cos(std::numbers::pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar pp = 0;
    for (int it = 0; it < 100; ++it) {
      Scalar p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const Scalar p3 = p2;
        p2 = p1;
        p1 = ((Scalar(2 * j - 1)) * z * p2 - Scalar(j - 1) * p3) / Scalar(j);
      }
      pp = Scalar(n) * (z * p1 - p2) / (z * z - Scalar(1));
      const Scalar dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= Scalar(4) * std::numeric_limits<Scalar>::epsilon()) break;
    }
    {
      Scalar p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const Scalar p3 = p2;
        p2 = p1;
        p1 = ((Scalar(2 * j - 1)) * z * p2 - Scalar(j - 1) * p3) / Scalar(j);
      }
      pp = Scalar(n) * (z * p1 - p2) / (z * z - Scalar(1));
    }
    const Scalar w = Scalar(2) / ((Scalar(1) - z * z) * pp * pp);
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace detail

/// Cached n-point Gauss-Legendre rule.  Thread-safe.
template <typename Scalar = double>
const Rule<Scalar>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule<Scalar>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::build_gauss_legendre<Scalar>(n)).first;
  return it->second;
}

/// Composite rule: the breakpoints define panels, each carrying an
/// `order`-point Gauss-Legendre rule.
template <typename Scalar = double>
Rule<Scalar> composite(const std::vector<Scalar>& breaks, int order) {
  const auto& g = gauss_legendre<Scalar>(order);
  const int panels = static_cast<int>(breaks.size()) - 1;
  Rule<Scalar> r;
  r.nodes.resize(panels * order);
  r.weights.resize(panels * order);
  for (int p = 0; p < panels; ++p) {
    const Scalar mid = (breaks[p + 1] + breaks[p]) / 2;
    const Scalar half = (breaks[p + 1] - breaks[p]) / 2;
    r.nodes.segment(p * order, order) = (mid + half * g.nodes.array()).matrix();
    r.weights.segment(p * order, order) = half * g.weights;
  }
  return r;
}

/// Evenly spaced panel breakpoints on [a, b].
template <typename Scalar = double>
std::vector<Scalar> uniform_breaks(Scalar a, Scalar b, int panels) {
  std::vector<Scalar> br(panels + 1);
  for (int i = 0; i <= panels; ++i) br[i] = a + (b - a) * Scalar(i) / Scalar(panels);
  br[panels] = b;
  return br;
}

template <typename T>
struct Estimate {
  T value{};
  double error = 0;
};

/// Adaptive Gauss-Legendre integration of f over [a, b].
///
/// Each panel is integrated with n and 2n nodes; panels whose two results
/// differ by more than their share of `abs_tol` are bisected.  Works for real
/// or complex valued f.  Throws AccuracyError when `max_depth` bisections do
/// not reach the tolerance.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double abs_tol, int order = 16, int max_depth = 30)
    -> Estimate<decltype(f(a))> {
  using T = decltype(f(a));
  const auto& lo = gauss_legendre<double>(order);
  const auto& hi = gauss_legendre<double>(2 * order);
  auto panel = [&](double x0, double x1, T& coarse, T& fine) {
    const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
    coarse = T{};
    fine = T{};
    for (int i = 0; i < order; ++i) coarse += lo.weights[i] * f(mid + half * lo.nodes[i]);
    for (int i = 0; i < 2 * order; ++i) fine += hi.weights[i] * f(mid + half * hi.nodes[i]);
    coarse *= half;
    fine *= half;
  };
  struct Item {
    double x0, x1;
    int depth;
  };
  std::vector<Item> stack{{a, b, 0}};
  Estimate<T> out;
  const double length = std::abs(b - a);
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    T c, fi;
    panel(it.x0, it.x1, c, fi);
    const double err = std::abs(fi - c);
    const double share = abs_tol * std::abs(it.x1 - it.x0) / length;
    if (err <= share || it.depth >= max_depth) {
      if (err > share && err > abs_tol) throw AccuracyError("adaptive quadrature did not converge", err);
      out.value += fi;
      out.error += err;
    } else {
      const double m = 0.5 * (it.x0 + it.x1);
      stack.push_back({m, it.x1, it.depth + 1});
      stack.push_back({it.x0, m, it.depth + 1});
    }
  }
  return out;
}

}  // namespace casimir::quad
