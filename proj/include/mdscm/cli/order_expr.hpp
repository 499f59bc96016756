#ifndef MDSCM_CLI_ORDER_EXPR_HPP_
#define MDSCM_CLI_ORDER_EXPR_HPP_

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace mdscm::cli {

class ExprError : public std::invalid_argument {
 public:
  ExprError(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Arithmetic expression over x and t.
///
/// Grammar: numbers, `x`, `t`, `pi`, binary + - * / with the usual
/// precedence, unary minus, parentheses, and the functions abs(.) and sin(.).
class OrderExpr {
 public:
  struct Node;

  /// Throws ExprError on syntax errors and unknown identifiers.
  static OrderExpr parse(const std::string& text);

  double operator()(double x, double t) const;
  bool uses_x() const { return uses_x_; }
  bool uses_t() const { return uses_t_; }
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_x_ = false;
  bool uses_t_ = false;
};

}  // namespace mdscm::cli

#endif  // MDSCM_CLI_ORDER_EXPR_HPP_
