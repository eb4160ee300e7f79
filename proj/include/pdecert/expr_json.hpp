#pragma once

// JSON expression-tree schema (see docs/closed_form_schema.md):
//   {"op":"const","value":3}            {"op":"coord","axis":0}
//   {"op":"affine","coef":[a,b,c,d],"const":s}
//   {"op":"add"|"mul","args":[...]}     {"op":"pow","args":[base],"exponent":p}
//   {"op":"exp"|"sin"|"cos"|"sinh"|"cosh"|"tanh","args":[inner]}
// "sub", "div" and "neg" are accepted on input and lowered.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pdecert/expr.hpp"

namespace pdecert {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline nlohmann::json expr_to_json(const Expr& e) {
  using nlohmann::json;
  switch (e.op()) {
    case Op::Constant: return json{{"op", "const"}, {"value", e.value()}};
    case Op::Coord: return json{{"op", "coord"}, {"axis", e.axis()}};
    case Op::Affine: {
      json coef = json::array();
      for (double c : e.coef()) coef.push_back(c);
      return json{{"op", "affine"}, {"coef", coef}, {"const", e.value()}};
    }
    case Op::Pow:
      return json{{"op", "pow"}, {"args", json::array({expr_to_json(e.kids()[0])})}, {"exponent", e.value()}};
    case Op::Exp:
    case Op::Sin:
    case Op::Cos:
    case Op::Sinh:
    case Op::Cosh:
    case Op::Tanh: {
      static const char* names[] = {"exp", "sin", "cos", "sinh", "cosh", "tanh"};
      const char* name = names[static_cast<int>(e.op()) - static_cast<int>(Op::Exp)];
      return json{{"op", name}, {"args", json::array({expr_to_json(e.kids()[0])})}};
    }
    case Op::Add:
    case Op::Mul: {
      json args = json::array();
      for (const Expr& k : e.kids()) args.push_back(expr_to_json(k));
      return json{{"op", e.op() == Op::Add ? "add" : "mul"}, {"args", args}};
    }
  }
  throw std::logic_error("expr_to_json: bad op");
}

inline Expr expr_from_json(const nlohmann::json& j, const std::string& path = "$") {
  if (j.is_number()) return Expr::constant(j.get<double>());
  if (!j.is_object()) throw SchemaError(path + ": expected object or number");
  if (!j.contains("op")) throw SchemaError(path + ": missing \"op\"");
  const std::string op = j.at("op").get<std::string>();

  auto args = [&](std::size_t want) {
    if (!j.contains("args") || !j.at("args").is_array() || j.at("args").size() != want)
      throw SchemaError(path + ": \"" + op + "\" needs " + std::to_string(want) + " args");
    return j.at("args");
  };
  auto nary = [&]() {
    if (!j.contains("args") || !j.at("args").is_array() || j.at("args").empty())
      throw SchemaError(path + ": \"" + op + "\" needs a non-empty args array");
    std::vector<Expr> ks;
    int i = 0;
    for (const auto& a : j.at("args")) {
      ks.push_back(expr_from_json(a, path + ".args[" + std::to_string(i) + "]"));
      ++i;
    }
    return ks;
  };

  if (op == "const") {
    if (!j.contains("value")) throw SchemaError(path + ": const needs \"value\"");
    return Expr::constant(j.at("value").get<double>());
  }
  if (op == "coord") {
    if (!j.contains("axis")) throw SchemaError(path + ": coord needs \"axis\"");
    return Expr::coord(j.at("axis").get<int>());
  }
  if (op == "affine") {
    if (!j.contains("coef") || !j.at("coef").is_array() || j.at("coef").size() > kMaxCoords)
      throw SchemaError(path + ": affine needs a coef array of up to 4 entries");
    std::array<double, kMaxCoords> coef{};
    std::size_t i = 0;
    for (const auto& c : j.at("coef")) coef[i++] = c.get<double>();
    double shift = j.contains("const") ? j.at("const").get<double>() : 0.0;
    return Expr::affine(coef, shift);
  }
  if (op == "add") return add_terms(nary());
  if (op == "mul") return mul_factors(nary());
  if (op == "sub") {
    auto a = args(2);
    return expr_from_json(a[0], path + ".args[0]") - expr_from_json(a[1], path + ".args[1]");
  }
  if (op == "div") {
    auto a = args(2);
    return expr_from_json(a[0], path + ".args[0]") / expr_from_json(a[1], path + ".args[1]");
  }
  if (op == "neg") return -expr_from_json(args(1)[0], path + ".args[0]");
  if (op == "pow") {
    if (!j.contains("exponent")) throw SchemaError(path + ": pow needs \"exponent\"");
    return pow(expr_from_json(args(1)[0], path + ".args[0]"), j.at("exponent").get<double>());
  }
  if (op == "exp") return exp(expr_from_json(args(1)[0], path + ".args[0]"));
  if (op == "sin") return sin(expr_from_json(args(1)[0], path + ".args[0]"));
  if (op == "cos") return cos(expr_from_json(args(1)[0], path + ".args[0]"));
  if (op == "sinh") return sinh(expr_from_json(args(1)[0], path + ".args[0]"));
  if (op == "cosh") return cosh(expr_from_json(args(1)[0], path + ".args[0]"));
  if (op == "tanh") return tanh(expr_from_json(args(1)[0], path + ".args[0]"));
  throw SchemaError(path + ": unknown op \"" + op + "\"");
}

}  // namespace pdecert
