#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sasaki/jet.hpp"

namespace sasaki::dsl {

struct ParseError : std::runtime_error {
  int line, column;
  size_t offset;
  ParseError(std::string msg, int line_, int col_, size_t off)
      : std::runtime_error(std::move(msg)), line(line_), column(col_), offset(off) {}
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class NodeKind { number, variable, negate, add, sub, mul, div, pow, call };
enum class Func { sin, cos, tan, exp, log, sqrt };

struct Node {
  NodeKind kind{};
  double number = 0.0;
  int var = -1;       // coordinate index for variables
  Func func{};        // for call nodes
  int a = -1, b = -1; // children (arena indices)
};

/// Parsed level-set expression over the chart coordinates.
/// Variables are x,y,z for m = 1 and x1..xm, y1..ym, z in general;
/// coordinates are ordered (x1..xm, y1..ym, z).
class Expr {
 public:
  Expr() = default;
  int m() const { return m_; }
  int dim() const { return 2 * m_ + 1; }
  const std::string& text() const { return text_; }

  template <class T>
  T eval(const std::vector<T>& coords) const;

  std::string print() const;

 private:
  friend Expr parse(const std::string&, int);
  std::vector<Node> nodes_;
  int root_ = -1;
  int m_ = 1;
  std::string text_;

  template <class T>
  T eval_node(int idx, const std::vector<T>& coords) const;
  std::optional<long long> integer_literal(int idx) const;
  void print_node(int idx, std::string& out, int parent_prec, bool right_child) const;
};

/// Recursive-descent parse with standard precedence: ^ binds tighter than
/// unary minus (so -x^2 is -(x^2)), * and / bind tighter than + and -,
/// ^ associates right. Errors carry line/column/byte positions.
Expr parse(const std::string& src, int m);

// ---- evaluation -------------------------------------------------------------

namespace detail {
inline bool nonpositive(double s) { return s <= 0.0; }
}  // namespace detail

template <class T>
T Expr::eval_node(int idx, const std::vector<T>& coords) const {
  using std::exp;
  using std::log;
  using std::pow;
  using std::sqrt;
  using std::sin;
  using std::cos;
  using std::tan;
  const Node& n = nodes_[idx];
  switch (n.kind) {
    case NodeKind::number:
      return T(n.number);
    case NodeKind::variable:
      return coords[n.var];
    case NodeKind::negate:
      return -eval_node<T>(n.a, coords);
    case NodeKind::add:
      return eval_node<T>(n.a, coords) + eval_node<T>(n.b, coords);
    case NodeKind::sub:
      return eval_node<T>(n.a, coords) - eval_node<T>(n.b, coords);
    case NodeKind::mul:
      return eval_node<T>(n.a, coords) * eval_node<T>(n.b, coords);
    case NodeKind::div: {
      T num = eval_node<T>(n.a, coords);
      T den = eval_node<T>(n.b, coords);
      if (std::fabs(scalar_part(den)) < 1e-300) throw EvalError("division by zero");
      return num / den;
    }
    case NodeKind::pow: {
      T base = eval_node<T>(n.a, coords);
      if (auto k = integer_literal(n.b)) return pow_int(base, *k);
      T expo = eval_node<T>(n.b, coords);
      if (detail::nonpositive(scalar_part(base)))
        throw EvalError("non-integer power of a non-positive base");
      return pow(base, expo);
    }
    case NodeKind::call: {
      T arg = eval_node<T>(n.a, coords);
      switch (n.func) {
        case Func::sin: return sin(arg);
        case Func::cos: return cos(arg);
        case Func::tan: return tan(arg);
        case Func::exp: return exp(arg);
        case Func::log:
          if (detail::nonpositive(scalar_part(arg))) throw EvalError("log of a non-positive value");
          return log(arg);
        case Func::sqrt:
          if (scalar_part(arg) < 0.0) throw EvalError("sqrt of a negative value");
          return sqrt(arg);
      }
      throw EvalError("unknown function");
    }
  }
  throw EvalError("malformed expression tree");
}

template <class T>
T Expr::eval(const std::vector<T>& coords) const {
  if (int(coords.size()) != dim()) throw EvalError("coordinate count does not match m");
  T r = eval_node<T>(root_, coords);
  if (!all_finite(r)) throw EvalError("evaluation produced a non-finite value");
  return r;
}

}  // namespace sasaki::dsl
