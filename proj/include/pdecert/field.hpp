#pragma once

// Sampling closed forms onto grids.  Bulk evaluation memoizes on shared
// subtrees (derivative trees reuse their operands), which keeps repeated
// residual evaluations close to linear in the number of distinct nodes.

#include <array>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdecert/expr.hpp"
#include "pdecert/grid.hpp"
#include "pdecert/report.hpp"

namespace pdecert {

// Non-finite evaluation (division by zero, overflow, sqrt of a negative)
// reported with the offending grid point.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, const Point& p) : std::runtime_error(format(what, p)), point(p) {}
  Point point;

 private:
  static std::string format(const std::string& what, const Point& p) {
    std::ostringstream os;
    os << what << " at point (" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")";
    return os.str();
  }
};

class BulkEvaluator {
 public:
  explicit BulkEvaluator(std::vector<Point> points) : points_(std::move(points)) {}

  static BulkEvaluator on_grid(const Grid& g, double time = 0.0) {
    std::vector<Point> pts(g.size());
    for (std::size_t f = 0; f < g.size(); ++f) {
      auto idx = g.unravel(f);
      Point p{0.0, 0.0, 0.0, time};
      for (int ax = 0; ax < g.dims; ++ax) p[static_cast<std::size_t>(ax)] = g.coord(ax, idx[static_cast<std::size_t>(ax)]);
      pts[f] = p;
    }
    return BulkEvaluator(std::move(pts));
  }

  const std::vector<Point>& points() const { return points_; }

  // Evaluates and requires every value to be finite.
  std::vector<double> operator()(const Expr& e) {
    const std::vector<double>& vals = evaluate(e);
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (!std::isfinite(vals[i]))
        throw EvalError("non-finite evaluation of " + e.to_string(), points_[i]);
    return vals;
  }

  // Evaluates without the finiteness requirement.
  const std::vector<double>& evaluate(const Expr& e) {
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    std::vector<double> out(points_.size());
    switch (e.op()) {
      case Op::Constant:
        for (auto& v : out) v = e.value();
        break;
      case Op::Coord:
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = points_[i][static_cast<std::size_t>(e.axis())];
        break;
      case Op::Affine:
        for (std::size_t i = 0; i < out.size(); ++i) {
          double s = e.value();
          for (int ax = 0; ax < kMaxCoords; ++ax)
            s += e.coef()[static_cast<std::size_t>(ax)] * points_[i][static_cast<std::size_t>(ax)];
          out[i] = s;
        }
        break;
      case Op::Pow: {
        const auto& b = evaluate(e.kids()[0]);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = Expr::eval_pow(b[i], e.value());
        break;
      }
      case Op::Exp:
      case Op::Sin:
      case Op::Cos:
      case Op::Sinh:
      case Op::Cosh:
      case Op::Tanh: {
        const auto& b = evaluate(e.kids()[0]);
        for (std::size_t i = 0; i < out.size(); ++i) {
          switch (e.op()) {
            case Op::Exp: out[i] = std::exp(b[i]); break;
            case Op::Sin: out[i] = std::sin(b[i]); break;
            case Op::Cos: out[i] = std::cos(b[i]); break;
            case Op::Sinh: out[i] = std::sinh(b[i]); break;
            case Op::Cosh: out[i] = std::cosh(b[i]); break;
            default: out[i] = std::tanh(b[i]); break;
          }
        }
        break;
      }
      case Op::Add: {
        for (auto& v : out) v = 0.0;
        for (const Expr& k : e.kids()) {
          const auto& kv = evaluate(k);
          for (std::size_t i = 0; i < out.size(); ++i) out[i] += kv[i];
        }
        break;
      }
      case Op::Mul: {
        for (auto& v : out) v = 1.0;
        for (const Expr& k : e.kids()) {
          const auto& kv = evaluate(k);
          for (std::size_t i = 0; i < out.size(); ++i) out[i] *= kv[i];
        }
        break;
      }
    }
    return memo_.emplace(e.id(), std::move(out)).first->second;
  }

 private:
  std::vector<Point> points_;
  std::unordered_map<const void*, std::vector<double>> memo_;
};

inline ScalarField sample(const Expr& e, const Grid& g, double time = 0.0) {
  BulkEvaluator ev = BulkEvaluator::on_grid(g, time);
  return ScalarField(g, ev(e));
}

inline VectorField sample(const std::vector<Expr>& es, const Grid& g, double time = 0.0) {
  BulkEvaluator ev = BulkEvaluator::on_grid(g, time);
  std::vector<std::vector<double>> comps;
  comps.reserve(es.size());
  for (const Expr& e : es) comps.push_back(ev(e));
  return VectorField(g, std::move(comps));
}

// Analytic multi-index derivative sampled on a grid; this is the oracle
// path residual checks prefer.  Total derivative order is capped at 3.
inline ScalarField eval_closed_form(const Expr& e, const Grid& g, const std::array<int, 3>& deriv,
                                    double time = 0.0) {
  int total = 0;
  for (int ax = 0; ax < 3; ++ax) {
    if (deriv[static_cast<std::size_t>(ax)] < 0)
      throw std::invalid_argument("eval_closed_form: negative derivative order");
    total += deriv[static_cast<std::size_t>(ax)];
  }
  if (total > 3) throw std::invalid_argument("eval_closed_form: total derivative order > 3");
  Expr d = e;
  for (int ax = 0; ax < 3; ++ax)
    for (int k = 0; k < deriv[static_cast<std::size_t>(ax)]; ++k) d = d.diff(ax);
  return sample(d, g, time);
}

inline ResidualReport report_on_grid(std::string name, const Expr& residual, const Grid& g,
                                     double time = 0.0) {
  ScalarField f = sample(residual, g, time);
  return ResidualReport::from_values(std::move(name), f.values, g.min_spacing());
}

// Max-over-components residual report built from several expressions.
inline ResidualReport report_on_grid(std::string name, const std::vector<Expr>& residuals,
                                     const Grid& g, double time = 0.0) {
  BulkEvaluator ev = BulkEvaluator::on_grid(g, time);
  ResidualReport out;
  out.name = std::move(name);
  out.grid_h = g.min_spacing();
  double l2sq = 0.0;
  for (const Expr& r : residuals) {
    auto vals = ev(r);
    out.linf = std::max(out.linf, norm_linf(vals));
    double l2 = norm_l2(vals);
    l2sq += l2 * l2;
  }
  out.l2 = std::sqrt(l2sq);
  return out;
}

}  // namespace pdecert
