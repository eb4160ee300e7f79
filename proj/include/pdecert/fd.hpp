#pragma once

// Finite-difference derivatives on uniform grids.  Stencil weights come
// from Fornberg's recurrence for arbitrary node sets, so interior rows use
// centered windows and non-periodic boundary rows use shifted windows of
// matching accuracy (one-sided stencils, no ghost extrapolation).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pdecert/grid.hpp"
#include "pdecert/report.hpp"

namespace pdecert {

// Weights for the m-th derivative at z from samples at nodes xs.
inline std::vector<double> fornberg_weights(double z, const std::vector<double>& xs, int m) {
  const int nd = static_cast<int>(xs.size()) - 1;
  std::vector<std::vector<double>> c(static_cast<std::size_t>(nd + 1),
                                     std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= nd; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[static_cast<std::size_t>(i)] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                    c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
              c2;
        c[static_cast<std::size_t>(i)][0] = -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
             k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
            c3;
      c[static_cast<std::size_t>(j)][0] = c4 * c[static_cast<std::size_t>(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) w[i] = c[i][static_cast<std::size_t>(m)];
  return w;
}

namespace detail {

inline std::vector<double> centered_offsets(int half) {
  std::vector<double> xs;
  for (int k = -half; k <= half; ++k) xs.push_back(static_cast<double>(k));
  return xs;
}

}  // namespace detail

inline ScalarField fd_derivative(const ScalarField& f, int axis, int order, int accuracy) {
  const Grid& g = f.grid;
  if (axis < 0 || axis >= g.dims) throw std::invalid_argument("fd_derivative: axis out of range");
  if (order != 1 && order != 2) throw std::invalid_argument("fd_derivative: order must be 1 or 2");
  if (accuracy != 2 && accuracy != 4)
    throw std::invalid_argument("fd_derivative: accuracy must be 2 or 4");

  const int n = g.n[static_cast<std::size_t>(axis)];
  if (n < 8 || n < accuracy + order + 1)
    throw std::invalid_argument("fd_derivative: grid too small on axis");

  const bool per = g.periodic[static_cast<std::size_t>(axis)];
  const double h = g.spacing(axis);
  const int cwidth = 2 * ((order + 1) / 2) - 1 + accuracy;  // centered window
  const int half = cwidth / 2;
  const int bwidth = order + accuracy;  // boundary window, generic accuracy

  const std::vector<double> cw = fornberg_weights(0.0, detail::centered_offsets(half), order);

  // Per-row one-sided/offset weights for the first and last rows.
  std::vector<std::vector<double>> bw_weights(static_cast<std::size_t>(n));
  std::vector<int> bw_start(static_cast<std::size_t>(n), 0);
  if (!per) {
    for (int i = 0; i < n; ++i) {
      if (i - half >= 0 && i + half < n) continue;  // centered fits
      int start = std::max(0, std::min(i - bwidth / 2, n - bwidth));
      std::vector<double> xs(static_cast<std::size_t>(bwidth));
      for (int k = 0; k < bwidth; ++k) xs[static_cast<std::size_t>(k)] = static_cast<double>(start + k - i);
      bw_weights[static_cast<std::size_t>(i)] = fornberg_weights(0.0, xs, order);
      bw_start[static_cast<std::size_t>(i)] = start;
    }
  }

  const double scale = 1.0 / std::pow(h, order);
  std::vector<double> out(f.values.size());

  // Walk every line along `axis`.
  const std::array<int, 3> dims_n = g.n;
  std::array<int, 3> outer{1, 1, 1};
  for (int ax = 0; ax < g.dims; ++ax)
    if (ax != axis) outer[static_cast<std::size_t>(ax)] = dims_n[static_cast<std::size_t>(ax)];

  auto flat = [&](std::array<int, 3> idx) { return g.index(idx[0], idx[1], idx[2]); };

  for (int a = 0; a < outer[0]; ++a) {
    for (int b = 0; b < outer[1]; ++b) {
      for (int c = 0; c < outer[2]; ++c) {
        std::array<int, 3> idx{a, b, c};
        for (int i = 0; i < n; ++i) {
          idx[static_cast<std::size_t>(axis)] = i;
          double acc = 0.0;
          if (per) {
            for (int k = -half; k <= half; ++k) {
              std::array<int, 3> src = idx;
              int j = (i + k) % n;
              if (j < 0) j += n;
              src[static_cast<std::size_t>(axis)] = j;
              acc += cw[static_cast<std::size_t>(k + half)] * f.values[flat(src)];
            }
          } else if (i - half >= 0 && i + half < n) {
            for (int k = -half; k <= half; ++k) {
              std::array<int, 3> src = idx;
              src[static_cast<std::size_t>(axis)] = i + k;
              acc += cw[static_cast<std::size_t>(k + half)] * f.values[flat(src)];
            }
          } else {
            const auto& w = bw_weights[static_cast<std::size_t>(i)];
            const int start = bw_start[static_cast<std::size_t>(i)];
            for (int k = 0; k < bwidth; ++k) {
              std::array<int, 3> src = idx;
              src[static_cast<std::size_t>(axis)] = start + k;
              acc += w[static_cast<std::size_t>(k)] * f.values[flat(src)];
            }
          }
          out[flat(idx)] = acc * scale;
        }
      }
    }
  }
  return ScalarField(g, std::move(out));
}

inline VectorField fd_grad(const ScalarField& f, int accuracy = 2) {
  std::vector<std::vector<double>> comps;
  for (int ax = 0; ax < f.grid.dims; ++ax) comps.push_back(fd_derivative(f, ax, 1, accuracy).values);
  return VectorField(f.grid, std::move(comps));
}

inline ScalarField fd_laplacian(const ScalarField& f, int accuracy = 2) {
  std::vector<double> out(f.values.size(), 0.0);
  for (int ax = 0; ax < f.grid.dims; ++ax) {
    ScalarField d = fd_derivative(f, ax, 2, accuracy);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += d.values[i];
  }
  return ScalarField(f.grid, std::move(out));
}

inline ScalarField fd_divergence(const VectorField& v, int accuracy = 2) {
  if (v.m() != v.grid.dims)
    throw std::invalid_argument("fd_divergence: component count must equal grid dims");
  std::vector<double> out(v.grid.size(), 0.0);
  for (int ax = 0; ax < v.grid.dims; ++ax) {
    ScalarField d = fd_derivative(ScalarField(v.grid, v.comps[static_cast<std::size_t>(ax)]), ax, 1, accuracy);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += d.values[i];
  }
  return ScalarField(v.grid, std::move(out));
}

}  // namespace pdecert
