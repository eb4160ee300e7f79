#pragma once

// Closed-form expression trees over up to four coordinates (x, y, z, t).
//
// The node set is closed under differentiation: every derivative of an
// expression built from {constant, coordinate, affine form, +, *, pow,
// exp, sin, cos, sinh, cosh, tanh} is again such an expression.
// Subtraction, division and negation are lowered at construction time
// (a - b -> a + (-1)*b, a/b -> a * b^-1), and n-ary sums/products keep
// their operands in a canonical order, so structurally equal inputs
// produce bit-identical trees and bit-identical evaluations.  Mixed
// partials commute exactly, not just up to rounding.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pdecert {

inline constexpr int kMaxCoords = 4;  // x, y, z and a trailing time slot
using Point = std::array<double, kMaxCoords>;

enum class Op : std::uint8_t {
  Constant,
  Coord,
  Affine,
  Pow,
  Exp,
  Sin,
  Cos,
  Sinh,
  Cosh,
  Tanh,
  Add,
  Mul,
};

class Expr {
 public:
  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Constant;
    n->value = v;
    return Expr(std::move(n));
  }

  static Expr coord(int axis) {
    if (axis < 0 || axis >= kMaxCoords)
      throw std::invalid_argument("Expr::coord: axis out of range");
    auto n = std::make_shared<Node>();
    n->op = Op::Coord;
    n->axis = axis;
    return Expr(std::move(n));
  }

  // a . x + c with coefficient vector a over the four coordinate slots.
  static Expr affine(const std::array<double, kMaxCoords>& coef, double shift) {
    bool any = false;
    for (double c : coef) any = any || c != 0.0;
    if (!any) return constant(shift);
    auto n = std::make_shared<Node>();
    n->op = Op::Affine;
    n->coef = coef;
    n->value = shift;
    return Expr(std::move(n));
  }

  Op op() const { return n_->op; }
  // Constant payload, Pow exponent or Affine shift depending on op().
  double value() const { return n_->value; }
  int axis() const { return n_->axis; }
  const std::array<double, kMaxCoords>& coef() const { return n_->coef; }
  const std::vector<Expr>& kids() const { return n_->kids; }
  const void* id() const { return n_.get(); }

  bool is_constant() const { return n_->op == Op::Constant; }
  bool is_constant(double v) const { return is_constant() && n_->value == v; }

  double eval(const Point& p) const {
    switch (n_->op) {
      case Op::Constant: return n_->value;
      case Op::Coord: return p[static_cast<std::size_t>(n_->axis)];
      case Op::Affine: {
        double s = n_->value;
        for (int i = 0; i < kMaxCoords; ++i) s += n_->coef[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
        return s;
      }
      case Op::Pow: return eval_pow(n_->kids[0].eval(p), n_->value);
      case Op::Exp: return std::exp(n_->kids[0].eval(p));
      case Op::Sin: return std::sin(n_->kids[0].eval(p));
      case Op::Cos: return std::cos(n_->kids[0].eval(p));
      case Op::Sinh: return std::sinh(n_->kids[0].eval(p));
      case Op::Cosh: return std::cosh(n_->kids[0].eval(p));
      case Op::Tanh: return std::tanh(n_->kids[0].eval(p));
      case Op::Add: {
        double s = 0.0;
        for (const Expr& k : n_->kids) s += k.eval(p);
        return s;
      }
      case Op::Mul: {
        double s = 1.0;
        for (const Expr& k : n_->kids) s *= k.eval(p);
        return s;
      }
    }
    throw std::logic_error("Expr::eval: bad op");
  }

  Expr diff(int axis) const;

  // Simultaneous substitution of coordinates by expressions.
  Expr subs(const std::map<int, Expr>& repl) const;

  // Structural comparison defining the canonical operand order.
  static int compare(const Expr& a, const Expr& b);
  bool same(const Expr& other) const { return compare(*this, other) == 0; }

  std::string to_string() const;

  static double eval_pow(double base, double p) {
    if (p == 2.0) return base * base;
    if (p == -1.0) return 1.0 / base;
    if (p == -2.0) return 1.0 / (base * base);
    if (p == 0.5) return std::sqrt(base);
    if (p == 3.0) return base * base * base;
    return std::pow(base, p);
  }

 private:
  struct Node {
    Op op = Op::Constant;
    double value = 0.0;                      // constant / exponent / affine shift
    int axis = -1;                           // coordinate index
    std::array<double, kMaxCoords> coef{};   // affine coefficients
    std::vector<Expr> kids;
  };

  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static Expr make(Op op, std::vector<Expr> kids, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = value;
    n->kids = std::move(kids);
    return Expr(std::move(n));
  }

  friend Expr add_terms(std::vector<Expr> ts);
  friend Expr mul_factors(std::vector<Expr> fs);
  friend Expr pow(const Expr& b, double p);
  friend Expr make_unary(Op op, const Expr& e, double (*f)(double));

  std::shared_ptr<const Node> n_;
};

namespace detail {

inline int op_rank(Op op) { return static_cast<int>(op); }

inline int cmp_double(double a, double b) {
  if (a < b) return -1;
  if (a > b) return 1;
  return 0;
}

inline bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace detail

inline int Expr::compare(const Expr& a, const Expr& b) {
  if (a.n_ == b.n_) return 0;
  int r = detail::cmp_double(detail::op_rank(a.op()), detail::op_rank(b.op()));
  if (r != 0) return r;
  switch (a.op()) {
    case Op::Constant: return detail::cmp_double(a.value(), b.value());
    case Op::Coord: return detail::cmp_double(a.axis(), b.axis());
    case Op::Affine: {
      for (int i = 0; i < kMaxCoords; ++i) {
        r = detail::cmp_double(a.coef()[static_cast<std::size_t>(i)], b.coef()[static_cast<std::size_t>(i)]);
        if (r != 0) return r;
      }
      return detail::cmp_double(a.value(), b.value());
    }
    case Op::Pow:
      r = detail::cmp_double(a.value(), b.value());
      if (r != 0) return r;
      return compare(a.kids()[0], b.kids()[0]);
    default: {
      r = detail::cmp_double(static_cast<double>(a.kids().size()),
                             static_cast<double>(b.kids().size()));
      if (r != 0) return r;
      for (std::size_t i = 0; i < a.kids().size(); ++i) {
        r = compare(a.kids()[i], b.kids()[i]);
        if (r != 0) return r;
      }
      return 0;
    }
  }
}

// ---- normalizing constructors -------------------------------------------

inline Expr add_terms(std::vector<Expr> ts) {
  std::vector<Expr> flat;
  std::vector<double> consts;
  for (Expr& t : ts) {
    if (t.op() == Op::Add) {
      for (const Expr& k : t.kids()) {
        if (k.is_constant())
          consts.push_back(k.value());
        else
          flat.push_back(k);
      }
    } else if (t.is_constant()) {
      consts.push_back(t.value());
    } else {
      flat.push_back(std::move(t));
    }
  }
  std::sort(consts.begin(), consts.end());
  double c = 0.0;
  for (double v : consts) c += v;
  std::sort(flat.begin(), flat.end(),
            [](const Expr& a, const Expr& b) { return Expr::compare(a, b) < 0; });
  if (c != 0.0) flat.insert(flat.begin(), Expr::constant(c));
  if (flat.empty()) return Expr::constant(0.0);
  if (flat.size() == 1) return flat[0];
  return Expr::make(Op::Add, std::move(flat));
}

inline Expr mul_factors(std::vector<Expr> fs) {
  std::vector<Expr> flat;
  std::vector<double> consts;
  for (Expr& f : fs) {
    if (f.op() == Op::Mul) {
      for (const Expr& k : f.kids()) {
        if (k.is_constant())
          consts.push_back(k.value());
        else
          flat.push_back(k);
      }
    } else if (f.is_constant()) {
      consts.push_back(f.value());
    } else {
      flat.push_back(std::move(f));
    }
  }
  std::sort(consts.begin(), consts.end());
  double c = 1.0;
  for (double v : consts) c *= v;
  if (c == 0.0) return Expr::constant(0.0);
  std::sort(flat.begin(), flat.end(),
            [](const Expr& a, const Expr& b) { return Expr::compare(a, b) < 0; });
  if (c != 1.0) flat.insert(flat.begin(), Expr::constant(c));
  if (flat.empty()) return Expr::constant(c);
  if (flat.size() == 1) return flat[0];
  return Expr::make(Op::Mul, std::move(flat));
}

inline Expr pow(const Expr& b, double p) {
  if (p == 0.0) return Expr::constant(1.0);
  if (p == 1.0) return b;
  if (b.is_constant()) {
    double v = Expr::eval_pow(b.value(), p);
    if (std::isfinite(v)) return Expr::constant(v);
  }
  // (u^a)^b = u^(ab) is only unconditionally valid for integer exponents.
  if (b.op() == Op::Pow && detail::is_integer(b.value()) && detail::is_integer(p))
    return pow(b.kids()[0], b.value() * p);
  return Expr::make(Op::Pow, {b}, p);
}

inline Expr make_unary(Op op, const Expr& e, double (*f)(double)) {
  if (e.is_constant()) return Expr::constant(f(e.value()));
  return Expr::make(op, {e});
}

inline Expr exp(const Expr& e) { return make_unary(Op::Exp, e, [](double v) { return std::exp(v); }); }
inline Expr sin(const Expr& e) { return make_unary(Op::Sin, e, [](double v) { return std::sin(v); }); }
inline Expr cos(const Expr& e) { return make_unary(Op::Cos, e, [](double v) { return std::cos(v); }); }
inline Expr sinh(const Expr& e) { return make_unary(Op::Sinh, e, [](double v) { return std::sinh(v); }); }
inline Expr cosh(const Expr& e) { return make_unary(Op::Cosh, e, [](double v) { return std::cosh(v); }); }
inline Expr tanh(const Expr& e) { return make_unary(Op::Tanh, e, [](double v) { return std::tanh(v); }); }
inline Expr sqrt(const Expr& e) { return pow(e, 0.5); }

inline Expr operator+(const Expr& a, const Expr& b) { return add_terms({a, b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul_factors({a, b}); }
inline Expr operator-(const Expr& a) { return mul_factors({Expr::constant(-1.0), a}); }
inline Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
inline Expr operator/(const Expr& a, const Expr& b) { return mul_factors({a, pow(b, -1.0)}); }

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

inline Expr Expr::diff(int axis) const {
  if (axis < 0 || axis >= kMaxCoords)
    throw std::invalid_argument("Expr::diff: axis out of range");
  switch (n_->op) {
    case Op::Constant: return constant(0.0);
    case Op::Coord: return constant(n_->axis == axis ? 1.0 : 0.0);
    case Op::Affine: return constant(n_->coef[static_cast<std::size_t>(axis)]);
    case Op::Add: {
      std::vector<Expr> ds;
      ds.reserve(n_->kids.size());
      for (const Expr& k : n_->kids) ds.push_back(k.diff(axis));
      return add_terms(std::move(ds));
    }
    case Op::Mul: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < n_->kids.size(); ++i) {
        std::vector<Expr> fs;
        fs.reserve(n_->kids.size());
        for (std::size_t j = 0; j < n_->kids.size(); ++j)
          fs.push_back(j == i ? n_->kids[j].diff(axis) : n_->kids[j]);
        terms.push_back(mul_factors(std::move(fs)));
      }
      return add_terms(std::move(terms));
    }
    case Op::Pow: {
      const Expr& u = n_->kids[0];
      return mul_factors({constant(n_->value), pdecert::pow(u, n_->value - 1.0), u.diff(axis)});
    }
    case Op::Exp: return mul_factors({*this, n_->kids[0].diff(axis)});
    case Op::Sin: return mul_factors({pdecert::cos(n_->kids[0]), n_->kids[0].diff(axis)});
    case Op::Cos:
      return mul_factors({constant(-1.0), pdecert::sin(n_->kids[0]), n_->kids[0].diff(axis)});
    case Op::Sinh: return mul_factors({pdecert::cosh(n_->kids[0]), n_->kids[0].diff(axis)});
    case Op::Cosh: return mul_factors({pdecert::sinh(n_->kids[0]), n_->kids[0].diff(axis)});
    case Op::Tanh:
      return mul_factors({pdecert::pow(pdecert::cosh(n_->kids[0]), -2.0), n_->kids[0].diff(axis)});
  }
  throw std::logic_error("Expr::diff: bad op");
}

inline Expr Expr::subs(const std::map<int, Expr>& repl) const {
  switch (n_->op) {
    case Op::Constant: return *this;
    case Op::Coord: {
      auto it = repl.find(n_->axis);
      return it == repl.end() ? *this : it->second;
    }
    case Op::Affine: {
      bool touched = false;
      for (const auto& [ax, e] : repl)
        touched = touched || n_->coef[static_cast<std::size_t>(ax)] != 0.0;
      if (!touched) return *this;
      std::vector<Expr> terms;
      terms.push_back(constant(n_->value));
      for (int i = 0; i < kMaxCoords; ++i) {
        double c = n_->coef[static_cast<std::size_t>(i)];
        if (c == 0.0) continue;
        auto it = repl.find(i);
        Expr base = it == repl.end() ? coord(i) : it->second;
        terms.push_back(mul_factors({constant(c), base}));
      }
      return add_terms(std::move(terms));
    }
    case Op::Pow: return pdecert::pow(n_->kids[0].subs(repl), n_->value);
    case Op::Exp: return pdecert::exp(n_->kids[0].subs(repl));
    case Op::Sin: return pdecert::sin(n_->kids[0].subs(repl));
    case Op::Cos: return pdecert::cos(n_->kids[0].subs(repl));
    case Op::Sinh: return pdecert::sinh(n_->kids[0].subs(repl));
    case Op::Cosh: return pdecert::cosh(n_->kids[0].subs(repl));
    case Op::Tanh: return pdecert::tanh(n_->kids[0].subs(repl));
    case Op::Add: {
      std::vector<Expr> ks;
      ks.reserve(n_->kids.size());
      for (const Expr& k : n_->kids) ks.push_back(k.subs(repl));
      return add_terms(std::move(ks));
    }
    case Op::Mul: {
      std::vector<Expr> ks;
      ks.reserve(n_->kids.size());
      for (const Expr& k : n_->kids) ks.push_back(k.subs(repl));
      return mul_factors(std::move(ks));
    }
  }
  throw std::logic_error("Expr::subs: bad op");
}

inline std::string Expr::to_string() const {
  std::ostringstream os;
  switch (n_->op) {
    case Op::Constant: os << n_->value; break;
    case Op::Coord: os << "xyzt"[n_->axis]; break;
    case Op::Affine: {
      os << "(";
      bool first = true;
      for (int i = 0; i < kMaxCoords; ++i) {
        double c = n_->coef[static_cast<std::size_t>(i)];
        if (c == 0.0) continue;
        if (!first) os << " + ";
        os << c << "*" << "xyzt"[i];
        first = false;
      }
      if (n_->value != 0.0 || first) {
        if (!first) os << " + ";
        os << n_->value;
      }
      os << ")";
      break;
    }
    case Op::Pow: os << "(" << n_->kids[0].to_string() << ")^" << n_->value; break;
    case Op::Exp: os << "exp(" << n_->kids[0].to_string() << ")"; break;
    case Op::Sin: os << "sin(" << n_->kids[0].to_string() << ")"; break;
    case Op::Cos: os << "cos(" << n_->kids[0].to_string() << ")"; break;
    case Op::Sinh: os << "sinh(" << n_->kids[0].to_string() << ")"; break;
    case Op::Cosh: os << "cosh(" << n_->kids[0].to_string() << ")"; break;
    case Op::Tanh: os << "tanh(" << n_->kids[0].to_string() << ")"; break;
    case Op::Add: {
      os << "(";
      for (std::size_t i = 0; i < n_->kids.size(); ++i) {
        if (i) os << " + ";
        os << n_->kids[i].to_string();
      }
      os << ")";
      break;
    }
    case Op::Mul: {
      os << "(";
      for (std::size_t i = 0; i < n_->kids.size(); ++i) {
        if (i) os << "*";
        os << n_->kids[i].to_string();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

// Convenience builders used throughout the solution catalogs.
inline Expr x() { return Expr::coord(0); }
inline Expr y() { return Expr::coord(1); }
inline Expr z() { return Expr::coord(2); }
inline Expr tvar() { return Expr::coord(3); }

// 1D profile argument convention: profiles are expressions in coordinate 0.
inline Expr compose1(const Expr& profile, const Expr& arg) {
  return profile.subs({{0, arg}});
}

inline Expr gradient_dot(const Expr& u, const Expr& v, int dims) {
  std::vector<Expr> terms;
  for (int i = 0; i < dims; ++i) terms.push_back(u.diff(i) * v.diff(i));
  return add_terms(std::move(terms));
}

inline Expr grad_norm_sq(const Expr& u, int dims) { return gradient_dot(u, u, dims); }

inline Expr laplacian_expr(const Expr& u, int dims) {
  std::vector<Expr> terms;
  for (int i = 0; i < dims; ++i) terms.push_back(u.diff(i).diff(i));
  return add_terms(std::move(terms));
}

}  // namespace pdecert
