#pragma once

// Transformations between scalar Eikonal-type equations |grad v|^2 = G(v)
// and pressureless Euler fields F_i = v_{x_i} / v_{x_n}, together with the
// mean-curvature equivalence and the generalized two-equation pipeline.

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdecert/expr.hpp"
#include "pdecert/field.hpp"
#include "pdecert/fd.hpp"
#include "pdecert/grid.hpp"
#include "pdecert/quadrature.hpp"
#include "pdecert/report.hpp"

namespace pdecert {

inline constexpr double kAnalyticTol = 1e-10;
inline constexpr double kPositivityMargin = 1e-8;

// A named hypothesis failed at a concrete sampled point.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& hypothesis, const Point& p, double value)
      : std::runtime_error(format(hypothesis, p, value)), point(p) {}
  explicit HypothesisError(const std::string& message) : std::runtime_error(message), point{} {}
  Point point;

 private:
  static std::string format(const std::string& hyp, const Point& p, double v) {
    std::ostringstream os;
    os << "hypothesis violated: " << hyp << " (value " << v << " at point (" << p[0] << ", "
       << p[1] << ", " << p[2] << "))";
    return os.str();
  }
};

// Sample e on g and require every value to exceed margin.
inline void require_positive(const Expr& e, const Grid& g, double margin,
                             const std::string& hypothesis, double time = 0.0) {
  BulkEvaluator ev = BulkEvaluator::on_grid(g, time);
  const auto& vals = ev.evaluate(e);
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (!(vals[i] > margin)) throw HypothesisError(hypothesis, ev.points()[i], vals[i]);
}

struct EikonalSolution {
  Expr v;        // on R^n, coordinates 0..dims-1
  Expr G;        // right-hand side profile, argument in coordinate 0
  int dims = 2;  // n in {2, 3}
  int time_axis = 1;

  void check_invariants(const Grid& g) const {
    if (dims != 2 && dims != 3) throw std::invalid_argument("EikonalSolution: dims must be 2 or 3");
    if (time_axis < 0 || time_axis >= dims)
      throw std::invalid_argument("EikonalSolution: time_axis out of range");
    require_positive(v.diff(time_axis), g, kPositivityMargin, "v_{x_n} > 0");
    ResidualReport r = report_on_grid("eikonal", grad_norm_sq(v, dims) - compose1(G, v), g);
    if (r.linf > kAnalyticTol)
      throw HypothesisError("input does not satisfy |grad v|^2 = G(v); residual " +
                            std::to_string(r.linf));
  }
};

struct EulerField {
  std::vector<Expr> F;      // one component per spatial axis, in axis order
  std::vector<int> y_axes;  // the spatial axes (all axes except time_axis)
  int time_axis = 1;
  int dims = 2;
};

inline EulerField euler_field_from_ratios(const Expr& u, int dims, int time_axis) {
  EulerField out;
  out.dims = dims;
  out.time_axis = time_axis;
  Expr un = u.diff(time_axis);
  for (int ax = 0; ax < dims; ++ax) {
    if (ax == time_axis) continue;
    out.F.push_back(u.diff(ax) / un);
    out.y_axes.push_back(ax);
  }
  return out;
}

inline EulerField eikonal_to_euler(const EikonalSolution& sol, const Grid& g) {
  sol.check_invariants(g);
  return euler_field_from_ratios(sol.v, sol.dims, sol.time_axis);
}

inline std::vector<Expr> euler_residual_exprs(const EulerField& f) {
  std::vector<Expr> res;
  for (std::size_t i = 0; i < f.F.size(); ++i) {
    Expr r = f.F[i].diff(f.time_axis);
    for (std::size_t j = 0; j < f.F.size(); ++j)
      r = r + f.F[j] * f.F[i].diff(f.y_axes[j]);
    res.push_back(r);
  }
  return res;
}

inline ResidualReport euler_residual(const EulerField& f, const Grid& g) {
  return report_on_grid("euler", euler_residual_exprs(f), g);
}

// Sampled-path variant: components are sampled and differentiated with
// finite differences of the given accuracy.
inline ResidualReport euler_residual_fd(const EulerField& f, const Grid& g, int accuracy = 2) {
  std::vector<ScalarField> Fs;
  for (const Expr& c : f.F) Fs.push_back(sample(c, g));
  ResidualReport out;
  out.name = "euler_fd";
  out.grid_h = g.min_spacing();
  double l2sq = 0.0;
  for (std::size_t i = 0; i < Fs.size(); ++i) {
    std::vector<double> r = fd_derivative(Fs[i], f.time_axis, 1, accuracy).values;
    for (std::size_t j = 0; j < Fs.size(); ++j) {
      ScalarField d = fd_derivative(Fs[i], f.y_axes[j], 1, accuracy);
      for (std::size_t q = 0; q < r.size(); ++q) r[q] += Fs[j].values[q] * d.values[q];
    }
    out.linf = std::max(out.linf, norm_linf(r));
    double l2 = norm_l2(r);
    l2sq += l2 * l2;
  }
  out.l2 = std::sqrt(l2sq);
  return out;
}

// Remark-style inversion, n = 2 only: vtilde = integral of 1/sqrt(F1^2+1)
// along the time axis plus a caller-supplied constant of integration a(x1).
// The free function a is a 1D profile in coordinate 0.
inline ScalarField reconstruct_eikonal_2d(const EulerField& f, const Expr& a, const Grid& g) {
  if (f.dims != 2)
    throw std::invalid_argument(
        "reconstruct_eikonal_2d: inversion is supported for n = 2 only; for n >= 3 further "
        "assumptions are needed");
  const int ty = f.time_axis;
  const int yx = f.y_axes[0];
  Expr integrand = pow(f.F[0] * f.F[0] + 1.0, -0.5);
  ScalarField w = sample(integrand, g);
  Expr a_of_y = compose1(a, Expr::coord(yx));
  ScalarField av = sample(a_of_y, g);

  const int nT = g.n[static_cast<std::size_t>(ty)];
  const int nY = g.n[static_cast<std::size_t>(yx)];
  const double h = g.spacing(ty);
  std::vector<double> out(g.size());
  for (int iy = 0; iy < nY; ++iy) {
    std::vector<double> line(static_cast<std::size_t>(nT));
    for (int it = 0; it < nT; ++it) {
      std::array<int, 3> idx{0, 0, 0};
      idx[static_cast<std::size_t>(yx)] = iy;
      idx[static_cast<std::size_t>(ty)] = it;
      line[static_cast<std::size_t>(it)] = w.values[g.index(idx[0], idx[1], idx[2])];
    }
    std::vector<double> integral = cumulative_simpson(line, h);
    for (int it = 0; it < nT; ++it) {
      std::array<int, 3> idx{0, 0, 0};
      idx[static_cast<std::size_t>(yx)] = iy;
      idx[static_cast<std::size_t>(ty)] = it;
      std::size_t flat = g.index(idx[0], idx[1], idx[2]);
      out[flat] = integral[static_cast<std::size_t>(it)] + av.values[flat];
    }
  }
  return ScalarField(g, std::move(out));
}

inline Expr mean_curvature_expr(const Expr& u, int dims) {
  Expr norm = pow(grad_norm_sq(u, dims), 0.5);
  std::vector<Expr> terms;
  for (int ax = 0; ax < dims; ++ax) terms.push_back((u.diff(ax) / norm).diff(ax));
  return add_terms(std::move(terms));
}

inline ScalarField mean_curvature(const Expr& u, int dims, const Grid& g,
                                  double gradient_floor = kPositivityMargin) {
  require_positive(grad_norm_sq(u, dims) - gradient_floor * gradient_floor, g, 0.0,
                   "|grad u| bounded away from 0");
  return sample(mean_curvature_expr(u, dims), g);
}

struct EquivalenceCheck {
  ResidualReport div_y;
  ResidualReport curvature;
  bool consistent = false;
};

// Lemma-style equivalence: div_y F vanishes exactly when the level sets of
// u have zero mean curvature.  Both sides are reported and the verdict
// says whether they agree about being zero at the analytic tolerance.
inline EquivalenceCheck divergence_equivalence_check(const Expr& u, int dims, int time_axis,
                                                     const Grid& g, double tol = kAnalyticTol) {
  require_positive(u.diff(time_axis), g, kPositivityMargin, "u_{x_n} > 0");
  EulerField f = euler_field_from_ratios(u, dims, time_axis);
  std::vector<Expr> div_terms;
  for (std::size_t i = 0; i < f.F.size(); ++i) div_terms.push_back(f.F[i].diff(f.y_axes[i]));
  EquivalenceCheck out;
  out.div_y = report_on_grid("div_y F", add_terms(std::move(div_terms)), g);
  ScalarField mc = mean_curvature(u, dims, g);
  out.curvature = ResidualReport::from_values("mean_curvature", mc.values, g.min_spacing());
  out.consistent = (out.div_y.linf <= tol) == (out.curvature.linf <= tol);
  return out;
}

// Coefficients of the paired equations
//   a(u) lap u + b(u) |grad u|^2 = f(u)
//   k(v) lap v + l(v) |grad v|^2 = g(v)
// with the link u = Phi(v).  All coefficient profiles take coordinate 0.
struct GeneralizedEqSpec {
  Expr a, b, f;
  Expr k, l, g;
  Expr phi;
};

struct Theorem1Report {
  Expr G;  // derived right-hand side of |grad v|^2 = G(v), argument coord 0
  ResidualReport eq1;            // u-equation hypothesis residual
  ResidualReport eq2;            // v-equation hypothesis residual
  ResidualReport eikonal;        // |grad v|^2 - G(v)
  ResidualReport euler;          // transported field residual
  ResidualReport divergence_ode; // 1D identity along the sampled range of v
};

inline Theorem1Report theorem1_pipeline(const GeneralizedEqSpec& spec, const Expr& v, int dims,
                                        int time_axis, const Grid& grid, int range_samples = 512) {
  require_positive(v.diff(time_axis), grid, kPositivityMargin, "v_{x_n} > 0");

  const Expr t0 = Expr::coord(0);
  Expr phi = spec.phi;
  Expr phi1 = phi.diff(0);
  Expr phi2 = phi1.diff(0);
  Expr a_phi = compose1(spec.a, phi);
  Expr b_phi = compose1(spec.b, phi);
  Expr f_phi = compose1(spec.f, phi);

  Expr p = spec.k * a_phi * phi2 + spec.k * b_phi * phi1 * phi1 - spec.l * a_phi * phi1;
  Expr G = (spec.k * f_phi - spec.g * a_phi * phi1) / p;

  // Range of v over the verification grid.
  ScalarField vs = sample(v, grid);
  double vmin = vs.values[0], vmax = vs.values[0];
  for (double w : vs.values) {
    vmin = std::min(vmin, w);
    vmax = std::max(vmax, w);
  }
  if (vmax - vmin < 1e-12) {
    vmin -= 0.5;
    vmax += 0.5;
  }
  Grid range = Grid::line(range_samples, vmin, vmax);
  require_positive(p * p, range, kPositivityMargin * kPositivityMargin, "p(t) != 0 on range of v");
  require_positive(phi1 * phi1, range, kPositivityMargin * kPositivityMargin,
                   "Phi'(t) != 0 on range of v");
  require_positive(a_phi * a_phi, range, kPositivityMargin * kPositivityMargin,
                   "a(Phi(t)) != 0 on range of v");

  Theorem1Report out;
  out.G = G;

  Expr u = compose1(phi, v);
  Expr eq1 = compose1(spec.a, u) * laplacian_expr(u, dims) +
             compose1(spec.b, u) * grad_norm_sq(u, dims) - compose1(spec.f, u);
  Expr eq2 = compose1(spec.k, v) * laplacian_expr(v, dims) +
             compose1(spec.l, v) * grad_norm_sq(v, dims) - compose1(spec.g, v);
  out.eq1 = report_on_grid("eq1 hypothesis", eq1, grid);
  out.eq2 = report_on_grid("eq2 hypothesis", eq2, grid);
  out.eikonal = report_on_grid("|grad v|^2 - G(v)", grad_norm_sq(v, dims) - compose1(G, v), grid);

  EulerField f = euler_field_from_ratios(u, dims, time_axis);
  out.euler = report_on_grid("euler", euler_residual_exprs(f), grid);

  Expr ode = a_phi * phi1 * G.diff(0) + 2.0 * (b_phi * phi1 * phi1 + a_phi * phi2) * G -
             2.0 * f_phi;
  out.divergence_ode = report_on_grid("divergence ODE", ode, range);
  (void)t0;
  return out;
}

}  // namespace pdecert
