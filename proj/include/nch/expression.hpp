#pragma once

#include <memory>
#include <string>

namespace nch {

/// Closed-form expression in the coordinates x and y, e.g.
/// "0.5 + 0.01*sin(211*pi*x)*sin(211*pi*y)". Supports + - * / ^, unary
/// minus, parentheses, the constants pi and e, and the functions sin cos tan
/// exp log sqrt tanh abs min max.
class Expression {
 public:
  explicit Expression(const std::string& source);
  ~Expression();
  Expression(const Expression&);
  Expression& operator=(const Expression&);

  double operator()(double x, double y) const;
  const std::string& source() const noexcept { return source_; }

  struct Node;

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace nch
