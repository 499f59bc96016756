#include "mdscm/cli/order_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace mdscm::cli {

struct OrderExpr::Node {
  enum class Op { number, x, t, add, sub, mul, div, neg, abs, sin };
  Op op = Op::number;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = OrderExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr leaf(Node::Op op, double value = 0.0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  return n;
}

NodePtr branch(Node::Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    skip();
    if (pos_ == s_.size()) throw ExprError("empty expression", pos_);
    auto n = expr();
    if (pos_ != s_.size()) throw ExprError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return n;
  }

  bool uses_x = false;
  bool uses_t = false;

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      skip();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ == s_.size()) throw ExprError(std::string("expected '") + c + "' but the input ended", pos_);
    if (!eat(c)) throw ExprError(std::string("expected '") + c + "', found '" + s_[pos_] + "'", pos_);
  }

  NodePtr expr() {
    auto n = term();
    for (;;) {
      if (eat('+')) {
        n = branch(Node::Op::add, n, term());
      } else if (eat('-')) {
        n = branch(Node::Op::sub, n, term());
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    auto n = unary();
    for (;;) {
      if (eat('*')) {
        n = branch(Node::Op::mul, n, unary());
      } else if (eat('/')) {
        n = branch(Node::Op::div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return branch(Node::Op::neg, unary());
    if (eat('+')) return unary();
    return primary();
  }

  NodePtr primary() {
    if (pos_ == s_.size()) throw ExprError("expected a value but the input ended", pos_);
    const char c = s_[pos_];
    if (eat('(')) {
      auto n = expr();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ExprError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (res.ec != std::errc()) throw ExprError("malformed number", start);
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    skip();
    return leaf(Node::Op::number, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = s_.substr(start, pos_ - start);
    skip();
    if (name == "x") {
      uses_x = true;
      return leaf(Node::Op::x);
    }
    if (name == "t") {
      uses_t = true;
      return leaf(Node::Op::t);
    }
    if (name == "pi") return leaf(Node::Op::number, std::numbers::pi);
    if (name == "abs" || name == "sin") {
      if (pos_ == s_.size() || s_[pos_] != '(') throw ExprError("function '" + name + "' needs '('", pos_);
      eat('(');
      auto arg = expr();
      expect(')');
      return branch(name == "abs" ? Node::Op::abs : Node::Op::sin, arg);
    }
    throw ExprError("unknown identifier '" + name + "'", start);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, double x, double t) {
  switch (n.op) {
    case Node::Op::number: return n.value;
    case Node::Op::x: return x;
    case Node::Op::t: return t;
    case Node::Op::add: return eval(*n.lhs, x, t) + eval(*n.rhs, x, t);
    case Node::Op::sub: return eval(*n.lhs, x, t) - eval(*n.rhs, x, t);
    case Node::Op::mul: return eval(*n.lhs, x, t) * eval(*n.rhs, x, t);
    case Node::Op::div: return eval(*n.lhs, x, t) / eval(*n.rhs, x, t);
    case Node::Op::neg: return -eval(*n.lhs, x, t);
    case Node::Op::abs: return std::fabs(eval(*n.lhs, x, t));
    case Node::Op::sin: return std::sin(eval(*n.lhs, x, t));
  }
  return 0.0;
}

}  // namespace

OrderExpr OrderExpr::parse(const std::string& text) {
  Parser p(text);
  OrderExpr e;
  e.root_ = p.parse();
  e.text_ = text;
  e.uses_x_ = p.uses_x;
  e.uses_t_ = p.uses_t;
  return e;
}

double OrderExpr::operator()(double x, double t) const { return eval(*root_, x, t); }

}  // namespace mdscm::cli
