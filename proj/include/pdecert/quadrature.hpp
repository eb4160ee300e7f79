#pragma once

// Quadrature building blocks: adaptive Simpson for generic 1D integrals,
// a cumulative Simpson rule along sampled grid lines, and Gauss-Hermite
// nodes/weights for Gaussian-weighted convolutions.

#include <cmath>
#include <cstddef>
#include <functional>
#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace pdecert {

namespace detail {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 40) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Cumulative integral of uniformly sampled values: I[0] = 0 and
// I[i] = integral from x[0] to x[i], fourth-order accurate.
inline std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw std::invalid_argument("cumulative_simpson: need >= 3 samples");
  std::vector<double> out(n, 0.0);
  out[1] = h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]);
  for (std::size_t i = 2; i < n; ++i) {
    if (i % 2 == 0)
      out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    else
      out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
  }
  return out;
}

struct GaussHermiteRule {
  std::vector<double> nodes;    // roots of H_n
  std::vector<double> weights;  // sum to sqrt(pi)
};

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix (zero diagonal,
// off-diagonal sqrt(j/2)), weights come from the first eigenvector
// components.  The tridiagonal QL sweep below tracks only that first row.
inline GaussHermiteRule gauss_hermite(int n) {
  if (n < 1 || n > 4096) throw std::invalid_argument("gauss_hermite: bad node count");
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::vector<double> z(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j < n; ++j) e[static_cast<std::size_t>(j - 1)] = std::sqrt(j / 2.0);
  z[0] = 1.0;

  const double eps = 2.3e-16;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[static_cast<std::size_t>(m)]) + std::abs(d[static_cast<std::size_t>(m + 1)]);
        if (std::abs(e[static_cast<std::size_t>(m)]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("gauss_hermite: eigenvalue sweep failed");
        double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * e[static_cast<std::size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          double b = c * e[static_cast<std::size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<std::size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i + 1)] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i + 1)] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i + 1)] = g + p;
          g = c * r - b;
          f = z[static_cast<std::size_t>(i + 1)];
          z[static_cast<std::size_t>(i + 1)] = s * z[static_cast<std::size_t>(i)] + c * f;
          z[static_cast<std::size_t>(i)] = c * z[static_cast<std::size_t>(i)] - s * f;
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)]; });

  const double sqrt_pi = 1.7724538509055160273;
  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    double zi = z[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    rule.weights[static_cast<std::size_t>(i)] = sqrt_pi * zi * zi;
  }
  return rule;
}

inline const GaussHermiteRule& gauss_hermite_cached(int n) {
  static std::mutex mu;
  static std::unordered_map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_hermite(n)).first;
  return it->second;
}

}  // namespace pdecert
