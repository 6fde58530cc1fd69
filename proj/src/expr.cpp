#include "cdlab/expr.hpp"

#include <cctype>
#include <cmath>

namespace cdlab {

struct Expr::Node {
  enum class Op { Const, X1, X2, T, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
  Op op;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Op = Expr::Node::Op;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_const(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression error at column " + std::to_string(pos_ + 1) + ": " + what +
                     " in '" + text_ + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      if (consume('+')) {
        e = make(Op::Add, e, term());
      } else if (consume('-')) {
        e = make(Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      if (consume('*')) {
        e = make(Op::Mul, e, factor());
      } else if (consume('/')) {
        e = make(Op::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (consume('^')) return make(Op::Pow, base, factor());  // right-assoc
    return base;
  }

  NodePtr unary() {
    if (consume('-')) return make(Op::Neg, unary());
    return primary();
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  NodePtr primary() {
    const char c = peek();
    if (c == '(') {
      consume('(');
      NodePtr e = expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      skip_ws();
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad numeric literal");
      }
      pos_ += used;
      return make_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string id = identifier();
      if (id == "x1") return make(Op::X1);
      if (id == "x2") return make(Op::X2);
      if (id == "t") return make(Op::T);
      if (id == "pi") return make_const(3.14159265358979323846);
      if (id == "sin" || id == "cos" || id == "exp") {
        if (!consume('(')) fail("expected '(' after " + id);
        NodePtr arg = expression();
        if (!consume(')')) fail("expected ')'");
        if (id == "sin") return make(Op::Sin, arg);
        if (id == "cos") return make(Op::Cos, arg);
        return make(Op::Exp, arg);
      }
      fail("unknown identifier '" + id + "'");
    }
    fail("expected a value");
  }
};

double eval_node(const Expr::Node& n, double x1, double x2, double t) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::X1: return x1;
    case Op::X2: return x2;
    case Op::T: return t;
    case Op::Add: return eval_node(*n.lhs, x1, x2, t) + eval_node(*n.rhs, x1, x2, t);
    case Op::Sub: return eval_node(*n.lhs, x1, x2, t) - eval_node(*n.rhs, x1, x2, t);
    case Op::Mul: return eval_node(*n.lhs, x1, x2, t) * eval_node(*n.rhs, x1, x2, t);
    case Op::Div: return eval_node(*n.lhs, x1, x2, t) / eval_node(*n.rhs, x1, x2, t);
    case Op::Pow:
      return std::pow(eval_node(*n.lhs, x1, x2, t), eval_node(*n.rhs, x1, x2, t));
    case Op::Neg: return -eval_node(*n.lhs, x1, x2, t);
    case Op::Sin: return std::sin(eval_node(*n.lhs, x1, x2, t));
    case Op::Cos: return std::cos(eval_node(*n.lhs, x1, x2, t));
    case Op::Exp: return std::exp(eval_node(*n.lhs, x1, x2, t));
  }
  throw Error("expression: bad node");
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text).run();
  return e;
}

double Expr::eval(double x1, double x2, double t) const {
  if (!root_) throw Error("Expr: empty expression");
  return eval_node(*root_, x1, x2, t);
}

SpaceTimeFn Expr::fn() const {
  if (!root_) return nullptr;
  auto root = root_;
  return [root](double x1, double x2, double t) { return eval_node(*root, x1, x2, t); };
}

SpaceFn Expr::fn_space() const {
  if (!root_) return nullptr;
  auto root = root_;
  return [root](double x1, double x2) { return eval_node(*root, x1, x2, 0.0); };
}

}  // namespace cdlab
