#pragma once

// Residual summaries and convergence-order estimation.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pdecert {

inline double norm_linf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Plain Euclidean norm, so l2 <= linf * sqrt(count) always holds.
inline double norm_l2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct ResidualReport {
  std::string name;
  double linf = 0.0;
  double l2 = 0.0;
  double grid_h = 0.0;
  std::optional<double> order_estimate;

  static ResidualReport from_values(std::string name, std::span<const double> values,
                                    double grid_h) {
    ResidualReport r;
    r.name = std::move(name);
    r.linf = norm_linf(values);
    r.l2 = norm_l2(values);
    r.grid_h = grid_h;
    return r;
  }
};

struct OrderEstimate {
  bool saturated = false;
  double slope = 0.0;
};

// Least-squares slope of log(residual) against log(h).  Residuals at or
// below 1e-14 mean the sequence hit the machine floor; no slope is fit
// in that case.
inline OrderEstimate convergence_order(const std::vector<std::pair<double, double>>& levels) {
  if (levels.size() < 3) throw std::invalid_argument("convergence_order: need >= 3 levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i].first < levels[i - 1].first))
      throw std::invalid_argument("convergence_order: h must be strictly decreasing");
  for (const auto& [h, v] : levels)
    if (v <= 1e-14) return {true, 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(levels.size());
  for (const auto& [h, v] : levels) {
    double lx = std::log(h), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return {false, (n * sxy - sx * sy) / (n * sxx - sx * sx)};
}

}  // namespace pdecert
