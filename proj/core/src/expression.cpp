#include "sesqui/expression.hpp"

#include <cctype>
#include <charconv>
#include <numbers>
#include <vector>

#include "sesqui/error.hpp"

namespace sesqui {

struct Expression::Node {
  enum class Kind { kNumber, kParameter, kNegate, kAdd, kSub, kMul, kDiv, kPow, kSin, kCos, kExp, kSqrt };

  Kind kind;
  double number = 0.0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, std::vector<NodePtr> args = {}, double number = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  n->number = number;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Kind::kAdd, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Node::Kind::kSub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Kind::kMul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Node::Kind::kDiv, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Kind::kNegate, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::kPow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return make(Node::Kind::kNumber, {}, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "t") return make(Node::Kind::kParameter);
    if (name == "pi") return make(Node::Kind::kNumber, {}, std::numbers::pi);

    Node::Kind kind;
    if (name == "sin") {
      kind = Node::Kind::kSin;
    } else if (name == "cos") {
      kind = Node::Kind::kCos;
    } else if (name == "exp") {
      kind = Node::Kind::kExp;
    } else if (name == "sqrt") {
      kind = Node::Kind::kSqrt;
    } else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    expect('(');
    NodePtr arg = expr();
    expect(')');
    return make(kind, {arg});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Jet eval(const Node& node, const Jet& t) {
  using K = Node::Kind;
  switch (node.kind) {
    case K::kNumber:
      return Jet::constant(node.number, t.degree());
    case K::kParameter:
      return t;
    case K::kNegate:
      return -eval(*node.args[0], t);
    case K::kAdd:
      return eval(*node.args[0], t) + eval(*node.args[1], t);
    case K::kSub:
      return eval(*node.args[0], t) - eval(*node.args[1], t);
    case K::kMul:
      return eval(*node.args[0], t) * eval(*node.args[1], t);
    case K::kDiv:
      return eval(*node.args[0], t) / eval(*node.args[1], t);
    case K::kPow:
      return pow(eval(*node.args[0], t), eval(*node.args[1], t));
    case K::kSin:
      return sin(eval(*node.args[0], t));
    case K::kCos:
      return cos(eval(*node.args[0], t));
    case K::kExp:
      return exp(eval(*node.args[0], t));
    case K::kSqrt:
      return sqrt(eval(*node.args[0], t));
  }
  throw StructuralError("corrupt expression node");
}

bool uses_parameter(const Node& node) {
  if (node.kind == Node::Kind::kParameter) return true;
  for (const auto& a : node.args) {
    if (uses_parameter(*a)) return true;
  }
  return false;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  return Expression(parser.parse(), std::string(text));
}

Jet Expression::evaluate(const Jet& t) const {
  try {
    return eval(*root_, t);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " in '" + text_ + "' at t = " + std::to_string(t.value()));
  }
}

double Expression::evaluate(double t) const { return evaluate(Jet::variable(t, 0)).value(); }

bool Expression::depends_on_parameter() const noexcept { return uses_parameter(*root_); }

}  // namespace sesqui
