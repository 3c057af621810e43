#include "sasaki/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace sasaki::dsl {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  double number = 0.0;
  bool integer = false;
  long long int_value = 0;
  std::string ident;
  size_t offset = 0;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_ws();
    Token t;
    t.offset = pos_;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::end;
      return t;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident(t);
    advance();
    switch (c) {
      case '+': t.kind = Tok::plus; return t;
      case '-': t.kind = Tok::minus; return t;
      case '*': t.kind = Tok::star; return t;
      case '/': t.kind = Tok::slash; return t;
      case '^': t.kind = Tok::caret; return t;
      case '(': t.kind = Tok::lparen; return t;
      case ')': t.kind = Tok::rparen; return t;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column,
                         t.offset);
    }
  }

 private:
  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, column_ = 1;

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  Token lex_number(Token t) {
    size_t start = pos_;
    bool has_dot = false, has_exp = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '.' && !has_dot && !has_exp) {
        has_dot = true;
        advance();
      } else if ((c == 'e' || c == 'E') && pos_ + 1 < src_.size() && !has_exp &&
                 (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
                  ((src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-') && pos_ + 2 < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_ + 2]))))) {
        has_exp = true;
        advance();
        if (src_[pos_] == '+' || src_[pos_] == '-') advance();
      } else {
        break;
      }
    }
    std::string text = src_.substr(start, pos_ - start);
    if (text == ".") throw ParseError("malformed number", t.line, t.column, t.offset);
    t.kind = Tok::number;
    t.number = std::strtod(text.c_str(), nullptr);
    t.integer = !has_dot && !has_exp && text.size() <= 18;
    if (t.integer) t.int_value = std::strtoll(text.c_str(), nullptr, 10);
    return t;
  }

  Token lex_ident(Token t) {
    size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_'))
      advance();
    t.kind = Tok::ident;
    t.ident = src_.substr(start, pos_ - start);
    return t;
  }
};

const std::map<std::string, Func>& function_table() {
  static const std::map<std::string, Func> table = {
      {"sin", Func::sin}, {"cos", Func::cos}, {"tan", Func::tan},
      {"exp", Func::exp}, {"log", Func::log}, {"sqrt", Func::sqrt}};
  return table;
}

class Parser {
 public:
  Parser(const std::string& src, int m) : lex_(src), m_(m) { shift(); }

  int parse_expr(std::vector<Node>& nodes) {
    int idx = parse_additive(nodes);
    if (cur_.kind != Tok::end)
      throw ParseError("unexpected trailing input", cur_.line, cur_.column, cur_.offset);
    return idx;
  }

 private:
  Lexer lex_;
  Token cur_;
  int m_;
  int depth_ = 0;

  static constexpr int kMaxDepth = 256;

  void shift() { cur_ = lex_.next(); }

  struct DepthGuard {
    int& d;
    const Token& tok;
    DepthGuard(int& depth, const Token& t) : d(depth), tok(t) {
      if (++d > kMaxDepth) throw ParseError("expression nests too deeply", t.line, t.column, t.offset);
    }
    ~DepthGuard() { --d; }
  };

  int add_node(std::vector<Node>& nodes, Node n) {
    nodes.push_back(n);
    return int(nodes.size()) - 1;
  }

  int parse_additive(std::vector<Node>& e) {
    DepthGuard guard(depth_, cur_);
    int lhs = parse_term(e);
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      NodeKind k = cur_.kind == Tok::plus ? NodeKind::add : NodeKind::sub;
      shift();
      int rhs = parse_term(e);
      Node n;
      n.kind = k;
      n.a = lhs;
      n.b = rhs;
      lhs = add_node(e, n);
    }
    return lhs;
  }

  int parse_term(std::vector<Node>& e) {
    DepthGuard guard(depth_, cur_);
    int lhs = parse_unary(e);
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      NodeKind k = cur_.kind == Tok::star ? NodeKind::mul : NodeKind::div;
      shift();
      int rhs = parse_unary(e);
      Node n;
      n.kind = k;
      n.a = lhs;
      n.b = rhs;
      lhs = add_node(e, n);
    }
    return lhs;
  }

  int parse_unary(std::vector<Node>& e) {
    DepthGuard guard(depth_, cur_);
    if (cur_.kind == Tok::minus) {
      shift();
      int child = parse_unary(e);
      Node n;
      n.kind = NodeKind::negate;
      n.a = child;
      return add_node(e, n);
    }
    if (cur_.kind == Tok::plus) {
      shift();
      return parse_unary(e);
    }
    return parse_power(e);
  }

  int parse_power(std::vector<Node>& e) {
    DepthGuard guard(depth_, cur_);
    int base = parse_primary(e);
    if (cur_.kind == Tok::caret) {
      shift();
      // right-associative; the exponent may carry its own unary minus
      int expo = parse_exponent(e);
      Node n;
      n.kind = NodeKind::pow;
      n.a = base;
      n.b = expo;
      return add_node(e, n);
    }
    return base;
  }

  int parse_exponent(std::vector<Node>& e) {
    DepthGuard guard(depth_, cur_);
    if (cur_.kind == Tok::minus) {
      shift();
      int child = parse_exponent(e);
      Node n;
      n.kind = NodeKind::negate;
      n.a = child;
      return add_node(e, n);
    }
    return parse_power(e);
  }

  int parse_primary(std::vector<Node>& e) {
    DepthGuard guard(depth_, cur_);
    Token t = cur_;
    switch (t.kind) {
      case Tok::number: {
        shift();
        Node n;
        n.kind = NodeKind::number;
        n.number = t.number;
        return add_node(e, n);
      }
      case Tok::lparen: {
        shift();
        int inner = parse_additive(e);
        if (cur_.kind != Tok::rparen)
          throw ParseError("expected ')'", cur_.line, cur_.column, cur_.offset);
        shift();
        return inner;
      }
      case Tok::ident: {
        shift();
        auto fn = function_table().find(t.ident);
        if (fn != function_table().end()) {
          if (cur_.kind != Tok::lparen)
            throw ParseError("function '" + t.ident + "' expects '('", cur_.line, cur_.column,
                             cur_.offset);
          shift();
          int arg = parse_additive(e);
          if (cur_.kind != Tok::rparen)
            throw ParseError("expected ')' closing call to '" + t.ident + "'", cur_.line,
                             cur_.column, cur_.offset);
          shift();
          Node n;
          n.kind = NodeKind::call;
          n.func = fn->second;
          n.a = arg;
          return add_node(e, n);
        }
        int var = resolve_variable(t);
        Node n;
        n.kind = NodeKind::variable;
        n.var = var;
        return add_node(e, n);
      }
      case Tok::rparen:
        throw ParseError("unbalanced ')'", t.line, t.column, t.offset);
      default:
        throw ParseError("expected a number, variable, function or '('", t.line, t.column,
                         t.offset);
    }
  }

  int resolve_variable(const Token& t) {
    const std::string& s = t.ident;
    // plain x, y, z accepted when m == 1; z always the last coordinate
    if (s == "z") return 2 * m_;
    if (m_ == 1) {
      if (s == "x") return 0;
      if (s == "y") return 1;
    }
    if (s.size() >= 2 && (s[0] == 'x' || s[0] == 'y')) {
      bool digits = true;
      for (size_t i = 1; i < s.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(s[i]));
      if (digits) {
        long idx = std::strtol(s.c_str() + 1, nullptr, 10);
        if (idx >= 1 && idx <= m_) return int(idx) - 1 + (s[0] == 'y' ? m_ : 0);
        throw ParseError("variable '" + s + "' out of range for m=" + std::to_string(m_), t.line,
                         t.column, t.offset);
      }
    }
    throw ParseError("unknown identifier '" + s + "'", t.line, t.column, t.offset);
  }
};

const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::exp: return "exp";
    case Func::log: return "log";
    case Func::sqrt: return "sqrt";
  }
  return "?";
}

// precedence levels used by the printer
int node_prec(NodeKind k) {
  switch (k) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::negate: return 3;
    case NodeKind::pow: return 4;
    default: return 5;
  }
}

}  // namespace

Expr parse(const std::string& src, int m) {
  if (m < 1) throw ParseError("m must be >= 1", 1, 1, 0);
  bool only_ws = true;
  for (char c : src) only_ws = only_ws && std::isspace(static_cast<unsigned char>(c));
  if (src.empty() || only_ws) throw ParseError("empty expression", 1, 1, 0);
  Expr e;
  e.m_ = m;
  e.text_ = src;
  Parser p(src, m);
  std::vector<Node> nodes;
  e.root_ = p.parse_expr(nodes);
  e.nodes_ = std::move(nodes);
  return e;
}

std::optional<long long> Expr::integer_literal(int idx) const {
  const Node& n = nodes_[idx];
  if (n.kind == NodeKind::negate) {
    auto inner = integer_literal(n.a);
    if (inner) return -*inner;
    return std::nullopt;
  }
  if (n.kind != NodeKind::number) return std::nullopt;
  double v = n.number;
  if (v != v || std::fabs(v) > 1e15) return std::nullopt;
  long long k = static_cast<long long>(v);
  if (double(k) == v) return k;
  return std::nullopt;
}

void Expr::print_node(int idx, std::string& out, int parent_prec, bool right_child) const {
  const Node& n = nodes_[idx];
  int prec = node_prec(n.kind);
  bool need_paren = prec < parent_prec || (prec == parent_prec && right_child &&
                                           (n.kind == NodeKind::add || n.kind == NodeKind::sub ||
                                            n.kind == NodeKind::mul || n.kind == NodeKind::div));
  if (need_paren) out += "(";
  switch (n.kind) {
    case NodeKind::number: {
      char buf[64];
      snprintf(buf, sizeof(buf), "%.17g", n.number);
      out += buf;
      break;
    }
    case NodeKind::variable: {
      int m = m_;
      if (n.var == 2 * m) {
        out += "z";
      } else if (m == 1) {
        out += (n.var == 0 ? "x" : "y");
      } else if (n.var < m) {
        out += "x" + std::to_string(n.var + 1);
      } else {
        out += "y" + std::to_string(n.var - m + 1);
      }
      break;
    }
    case NodeKind::negate:
      out += "-";
      print_node(n.a, out, node_prec(NodeKind::negate), true);
      break;
    case NodeKind::add:
      print_node(n.a, out, prec, false);
      out += " + ";
      print_node(n.b, out, prec, true);
      break;
    case NodeKind::sub:
      print_node(n.a, out, prec, false);
      out += " - ";
      print_node(n.b, out, prec, true);
      break;
    case NodeKind::mul:
      print_node(n.a, out, prec, false);
      out += "*";
      print_node(n.b, out, prec, true);
      break;
    case NodeKind::div:
      print_node(n.a, out, prec, false);
      out += "/";
      print_node(n.b, out, prec, true);
      break;
    case NodeKind::pow:
      print_node(n.a, out, prec + 1, false);  // left operand of ^ parenthesized at equal prec
      out += "^";
      print_node(n.b, out, prec, false);
      break;
    case NodeKind::call:
      out += func_name(n.func);
      out += "(";
      print_node(n.a, out, 0, false);
      out += ")";
      break;
  }
  if (need_paren) out += ")";
}

std::string Expr::print() const {
  std::string out;
  print_node(root_, out, 0, false);
  return out;
}

}  // namespace sasaki::dsl
