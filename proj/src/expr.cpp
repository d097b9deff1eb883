#include "sz1d/expr.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include "sz1d/errors.hpp"

namespace sz1d {

namespace {

struct Node {
  virtual ~Node() = default;
  virtual double eval(double x) const = 0;
};
using NodePtr = std::unique_ptr<Node>;

struct Const : Node {
  double value;
  explicit Const(double v) : value(v) {}
  double eval(double) const override { return value; }
};

struct Var : Node {
  double eval(double x) const override { return x; }
};

struct Unary : Node {
  double (*fn)(double);
  NodePtr arg;
  Unary(double (*f)(double), NodePtr a) : fn(f), arg(std::move(a)) {}
  double eval(double x) const override { return fn(arg->eval(x)); }
};

struct Binary : Node {
  double (*fn)(double, double);
  NodePtr lhs, rhs;
  Binary(double (*f)(double, double), NodePtr l, NodePtr r)
      : fn(f), lhs(std::move(l)), rhs(std::move(r)) {}
  double eval(double x) const override {
    return fn(lhs->eval(x), rhs->eval(x));
  }
};

double add(double a, double b) { return a + b; }
double sub(double a, double b) { return a - b; }
double mul(double a, double b) { return a * b; }
double divide(double a, double b) { return a / b; }
double neg(double a) { return -a; }
double sech(double a) { return 1.0 / std::cosh(a); }
double min2(double a, double b) { return std::min(a, b); }
double max2(double a, double b) { return std::max(a, b); }
double pow2(double a, double b) { return std::pow(a, b); }

struct Parser {
  const std::string& text;
  const std::string& var;
  std::size_t pos = 0;

  Parser(const std::string& t, const std::string& v) : text(t), var(v) {}

  [[noreturn]] void bad(const std::string& what) {
    fail(ErrorCode::invalid_config, "expression parse error: " + what,
         "at offset " + std::to_string(pos) + " in \"" + text + "\"");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos != text.size()) bad("trailing input");
    return e;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = std::make_unique<Binary>(add, std::move(lhs), term());
      else if (eat('-'))
        lhs = std::make_unique<Binary>(sub, std::move(lhs), term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = std::make_unique<Binary>(mul, std::move(lhs), unary());
      else if (eat('/'))
        lhs = std::make_unique<Binary>(divide, std::move(lhs), unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) return std::make_unique<Unary>(neg, unary());
    eat('+');
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^'))
      return std::make_unique<Binary>(pow2, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos >= text.size()) bad("unexpected end of input");
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (eat('(')) {
      NodePtr e = expr();
      if (!eat(')')) bad("expected ')'");
      return e;
    }
    bad("unexpected character");
  }

  NodePtr number() {
    std::size_t consumed = 0;
    double v;
    try {
      v = std::stod(text.substr(pos), &consumed);
    } catch (const std::exception&) {
      bad("malformed number");
    }
    pos += consumed;
    return std::make_unique<Const>(v);
  }

  NodePtr ident() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    const std::string name = text.substr(start, pos - start);

    static const std::map<std::string, double (*)(double)> unary_fns = {
        {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
        {"asin", std::asin}, {"acos", std::acos}, {"atan", std::atan},
        {"exp", std::exp},   {"log", std::log},   {"ln", std::log},
        {"sqrt", std::sqrt}, {"abs", std::fabs},  {"sinh", std::sinh},
        {"cosh", std::cosh}, {"tanh", std::tanh}, {"sech", sech},
    };
    static const std::map<std::string, double (*)(double, double)> binary_fns =
        {{"pow", pow2}, {"min", min2}, {"max", max2}};

    if (eat('(')) {
      if (auto it = unary_fns.find(name); it != unary_fns.end()) {
        NodePtr arg = expr();
        if (!eat(')')) bad("expected ')' after argument of " + name);
        return std::make_unique<Unary>(it->second, std::move(arg));
      }
      if (auto it = binary_fns.find(name); it != binary_fns.end()) {
        NodePtr a = expr();
        if (!eat(',')) bad("expected ',' in " + name);
        NodePtr b = expr();
        if (!eat(')')) bad("expected ')' after arguments of " + name);
        return std::make_unique<Binary>(it->second, std::move(a), std::move(b));
      }
      bad("unknown function '" + name + "'");
    }
    if (name == var) return std::make_unique<Var>();
    if (name == "pi") return std::make_unique<Const>(3.14159265358979323846);
    if (name == "e") return std::make_unique<Const>(2.71828182845904523536);
    bad("unknown identifier '" + name + "'");
  }
};

}  // namespace

std::function<double(double)> compile_expression(const std::string& text,
                                                 const std::string& variable) {
  Parser parser(text, variable);
  std::shared_ptr<Node> root{parser.parse().release()};
  return [root](double x) { return root->eval(x); };
}

}  // namespace sz1d
