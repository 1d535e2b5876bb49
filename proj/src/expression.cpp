#include "nch/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nch {

struct Expression::Node {
  enum class Op { kConst, kX, kY, kAdd, kSub, kMul, kDiv, kPow, kNeg, kCall };
  Op op = Op::kConst;
  double value = 0.0;
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, double y) const {
    switch (op) {
      case Op::kConst: return value;
      case Op::kX: return x;
      case Op::kY: return y;
      case Op::kAdd: return args[0]->eval(x, y) + args[1]->eval(x, y);
      case Op::kSub: return args[0]->eval(x, y) - args[1]->eval(x, y);
      case Op::kMul: return args[0]->eval(x, y) * args[1]->eval(x, y);
      case Op::kDiv: return args[0]->eval(x, y) / args[1]->eval(x, y);
      case Op::kPow: return std::pow(args[0]->eval(x, y), args[1]->eval(x, y));
      case Op::kNeg: return -args[0]->eval(x, y);
      case Op::kCall: return call(x, y);
    }
    return 0.0;
  }

  double call(double x, double y) const {
    const double a = args[0]->eval(x, y);
    if (fn == "sin") return std::sin(a);
    if (fn == "cos") return std::cos(a);
    if (fn == "tan") return std::tan(a);
    if (fn == "exp") return std::exp(a);
    if (fn == "log") return std::log(a);
    if (fn == "sqrt") return std::sqrt(a);
    if (fn == "tanh") return std::tanh(a);
    if (fn == "abs") return std::abs(a);
    const double b = args[1]->eval(x, y);
    if (fn == "min") return std::min(a, b);
    return std::max(a, b);  // "max"; names are checked at parse time
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, std::vector<NodePtr> args = {}, double value = 0.0, std::string fn = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->args = std::move(args);
  n->value = value;
  n->fn = std::move(fn);
  return n;
}

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := '-' unary | '+' unary | power
// power  := atom ('^' unary)?
// atom   := number | name | name '(' expr (',' expr)? ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + s_ + "': " + what + " at offset " +
                                std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Op::kAdd, {lhs, term()});
      else if (accept('-')) lhs = make(Op::kSub, {lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Op::kMul, {lhs, unary()});
      else if (accept('/')) lhs = make(Op::kDiv, {lhs, unary()});
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::kNeg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Op::kPow, {base, unary()});
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Op::kConst, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x") return make(Op::kX);
      if (name == "y") return make(Op::kY);
      if (name == "pi") return make(Op::kConst, {}, std::numbers::pi);
      if (name == "e") return make(Op::kConst, {}, std::numbers::e);
      const bool unary_fn = name == "sin" || name == "cos" || name == "tan" || name == "exp" ||
                            name == "log" || name == "sqrt" || name == "tanh" || name == "abs";
      const bool binary_fn = name == "min" || name == "max";
      if (!unary_fn && !binary_fn) fail("unknown name '" + name + "'");
      if (!accept('(')) fail("expected '(' after " + name);
      std::vector<NodePtr> args{expr()};
      if (binary_fn) {
        if (!accept(',')) fail(name + " takes two arguments");
        args.push_back(expr());
      }
      if (!accept(')')) fail("expected ')'");
      return make(Op::kCall, std::move(args), 0.0, name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expression::Expression(const std::string& source) : source_(source), root_(Parser(source).parse()) {}
Expression::~Expression() = default;
Expression::Expression(const Expression&) = default;
Expression& Expression::operator=(const Expression&) = default;

double Expression::operator()(double x, double y) const { return root_->eval(x, y); }

}  // namespace nch
