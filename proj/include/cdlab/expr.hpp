#pragma once
// Tiny expression grammar for coefficient definitions in config files:
// +, -, *, /, ^, sin, cos, exp, the variables x1, x2, t, and numeric
// literals. Hand-written recursive descent, no dependencies.

#include <memory>
#include <string>

#include "cdlab/common.hpp"
#include "cdlab/fields.hpp"

namespace cdlab {

class Expr {
 public:
  Expr() = default;
  static Expr parse(const std::string& text);

  bool empty() const { return root_ == nullptr; }
  double eval(double x1, double x2, double t) const;
  const std::string& text() const { return text_; }

  SpaceTimeFn fn() const;
  SpaceFn fn_space() const;  // evaluated at t = 0

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace cdlab
