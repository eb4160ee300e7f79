#pragma once

// Adaptive Cash-Karp RK4(5) for small fixed-size systems.  Steps clamp
// onto requested sample times, so output values come straight from the
// integrator instead of interpolation.

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pdecert {

class BlowupError : public std::runtime_error {
 public:
  BlowupError(double t, double magnitude)
      : std::runtime_error(format(t, magnitude)), where(t) {}
  double where;

 private:
  static std::string format(double t, double m) {
    std::ostringstream os;
    os << "ODE solution escaped (|state| = " << m << ") near t = " << t;
    return os.str();
  }
};

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double max_step = 0.05;
  double blowup_limit = 1e8;
};

namespace detail {

template <std::size_t N, class F>
void cash_karp_step(const F& f, double t, const std::array<double, N>& y, double h,
                    std::array<double, N>& y5, std::array<double, N>& err) {
  constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
  constexpr double b21 = 0.2;
  constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
  constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
  constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
  constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                   b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
  constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                   c6 = 512.0 / 1771.0;
  constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                   d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0, d6 = c6 - 0.25;

  std::array<double, N> k1, k2, k3, k4, k5, k6, tmp;
  f(t, y, k1);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * b21 * k1[i];
  f(t + a2 * h, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
  f(t + a3 * h, tmp, k3);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
  f(t + a4 * h, tmp, k4);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
  f(t + a5 * h, tmp, k5);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] + b65 * k5[i]);
  f(t + a6 * h, tmp, k6);
  for (std::size_t i = 0; i < N; ++i) {
    y5[i] = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
    err[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
  }
}

}  // namespace detail

// Integrates y' = f(t, y) from times[0] through times.back() (times must be
// monotone, either direction) and returns the state at each requested time.
template <std::size_t N, class F>
std::vector<std::array<double, N>> integrate_at(const F& f, std::array<double, N> y0,
                                                const std::vector<double>& times,
                                                const OdeOptions& opt = {}) {
  if (times.empty()) return {};
  std::vector<std::array<double, N>> out;
  out.reserve(times.size());
  out.push_back(y0);

  std::array<double, N> y = y0;
  double t = times[0];
  for (std::size_t target = 1; target < times.size(); ++target) {
    const double tf = times[target];
    const double dir = tf > t ? 1.0 : -1.0;
    double h = dir * std::min(opt.max_step, std::abs(tf - t));
    while (dir * (tf - t) > 0.0) {
      if (dir * (t + h - tf) > 0.0) h = tf - t;
      std::array<double, N> y5, err;
      detail::cash_karp_step<N>(f, t, y, h, y5, err);
      double scale = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        double tol = opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        scale = std::max(scale, std::abs(err[i]) / tol);
      }
      if (scale <= 1.0) {
        t += h;
        y = y5;
        double mag = 0.0;
        for (double v : y) mag = std::max(mag, std::abs(v));
        if (mag > opt.blowup_limit) throw BlowupError(t, mag);
        const double grow = scale > 0.0 ? 0.9 * std::pow(scale, -0.2) : 5.0;
        h *= std::min(5.0, grow);
        if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
      } else {
        h *= std::max(0.1, 0.9 * std::pow(scale, -0.25));
      }
      if (std::abs(h) < 1e-14) throw BlowupError(t, 0.0);
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace pdecert
