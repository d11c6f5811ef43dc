#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "sesqui/jet.hpp"

namespace sesqui {

/// Arithmetic expression in the curve parameter t.
///
///   expr    = term { ("+" | "-") term } ;
///   term    = unary { ("*" | "/") unary } ;
///   unary   = ("-" | "+") unary | power ;
///   power   = primary [ "^" unary ] ;            (right associative)
///   primary = number | "t" | "pi" | func "(" expr ")" | "(" expr ")" ;
///   func    = "sin" | "cos" | "exp" | "sqrt" ;
///
/// Integer exponents are expanded by repeated multiplication; any other exponent
/// requires a positive base. Evaluation on a Jet propagates exact derivatives.
class Expression {
 public:
  /// Throws ParseError carrying the column of the first offending token.
  static Expression parse(std::string_view text);

  Jet evaluate(const Jet& t) const;
  double evaluate(double t) const;

  const std::string& text() const noexcept { return text_; }
  bool depends_on_parameter() const noexcept;

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, std::string text)
      : root_(std::move(root)), text_(std::move(text)) {}

  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace sesqui
