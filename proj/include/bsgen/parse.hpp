#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsgen/instance.hpp"
#include "bsgen/weyl.hpp"

namespace bsgen {

/// Expression tree of the input grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*      division only by constants
///   unary := ('+' | '-') unary | power
///   power := atom ('^' integer)?
///   atom  := integer | identifier | '(' expr ')'
struct ExprAST {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  Rational value;        // Number
  std::string name;      // Variable
  unsigned exponent = 0;  // Pow
  int line = 1, column = 1;
  std::vector<std::unique_ptr<ExprAST>> kids;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  std::unique_ptr<ExprAST> parse() {
    skip();
    if (pos_ >= s_.size()) error("empty expression");
    auto e = expr();
    skip();
    if (pos_ < s_.size()) error(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::SyntaxError, what + " at line " + std::to_string(line) + ", column " + std::to_string(col));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::unique_ptr<ExprAST> node(ExprAST::Kind k) {
    auto n = std::make_unique<ExprAST>();
    n->kind = k;
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_; ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    n->line = line;
    n->column = col;
    return n;
  }

  std::unique_ptr<ExprAST> binary(ExprAST::Kind k, std::unique_ptr<ExprAST> l, std::unique_ptr<ExprAST> r) {
    auto n = std::make_unique<ExprAST>();
    n->kind = k;
    n->line = l->line;
    n->column = l->column;
    n->kids.push_back(std::move(l));
    n->kids.push_back(std::move(r));
    return n;
  }

  std::unique_ptr<ExprAST> expr() {
    auto l = term();
    while (true) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return l;
      auto k = s_[pos_++] == '+' ? ExprAST::Kind::Add : ExprAST::Kind::Sub;
      l = binary(k, std::move(l), term());
    }
  }

  std::unique_ptr<ExprAST> term() {
    auto l = unary();
    while (true) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '*' && s_[pos_] != '/')) return l;
      auto k = s_[pos_++] == '*' ? ExprAST::Kind::Mul : ExprAST::Kind::Div;
      l = binary(k, std::move(l), unary());
    }
  }

  std::unique_ptr<ExprAST> unary() {
    skip();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      bool neg = s_[pos_] == '-';
      auto n = node(ExprAST::Kind::Neg);
      ++pos_;
      auto inner = unary();
      if (!neg) return inner;
      n->kids.push_back(std::move(inner));
      return n;
    }
    return power();
  }

  std::unique_ptr<ExprAST> power() {
    auto base = atom();
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '^') return base;
    ++pos_;
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      error("exponent must be a non-negative integer literal");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ - start > 6) error("exponent too large");
    auto n = node(ExprAST::Kind::Pow);
    n->exponent = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    n->line = base->line;
    n->column = base->column;
    n->kids.push_back(std::move(base));
    return n;
  }

  std::unique_ptr<ExprAST> atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = node(ExprAST::Kind::Number);
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      n->value = Rational(Integer(std::string(s_.substr(start, pos_ - start))));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      auto n = node(ExprAST::Kind::Variable);
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      n->name = std::string(s_.substr(start, pos_ - start));
      return n;
    }
    if (c == '(') {
      ++pos_;
      auto e = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') error("expected ')'");
      ++pos_;
      return e;
    }
    error(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

template <class T, class Make, class Mul>
T lower(const ExprAST& e, const Make& make, const Mul& mul) {
  using K = ExprAST::Kind;
  switch (e.kind) {
    case K::Number: return make(e.value, std::string());
    case K::Variable: return make(Rational(0), e.name);
    case K::Add: return lower<T>(*e.kids[0], make, mul) + lower<T>(*e.kids[1], make, mul);
    case K::Sub: return lower<T>(*e.kids[0], make, mul) - lower<T>(*e.kids[1], make, mul);
    case K::Neg: return -lower<T>(*e.kids[0], make, mul);
    case K::Mul: return mul(lower<T>(*e.kids[0], make, mul), lower<T>(*e.kids[1], make, mul));
    case K::Div: {
      T den = lower<T>(*e.kids[1], make, mul);
      const auto& dp = den.poly_ref();
      if (!dp.is_constant())
        fail(ErrorCode::SyntaxError, "division by a non-constant at line " + std::to_string(e.kids[1]->line) +
                                         ", column " + std::to_string(e.kids[1]->column));
      if (dp.is_zero()) fail(ErrorCode::SyntaxError, "division by zero");
      return lower<T>(*e.kids[0], make, mul).scale_by(Rational(1) / dp.constant_coeff());
    }
    case K::Pow: {
      T base = lower<T>(*e.kids[0], make, mul);
      T r = make(Rational(1), std::string());
      for (unsigned i = 0; i < e.exponent; ++i) r = mul(r, base);
      return r;
    }
  }
  fail(ErrorCode::SyntaxError, "malformed expression");
}

/// Thin wrapper giving Poly and WeylOp the same interface for lowering.
template <class V>
struct Lowered {
  V v;
  Lowered operator+(const Lowered& o) const { return {v + o.v}; }
  Lowered operator-(const Lowered& o) const { return {v - o.v}; }
  Lowered operator-() const { return {-v}; }
  Lowered scale_by(const Rational& q) const { return {v.scale(q)}; }
  const QPoly& poly_ref() const {
    if constexpr (std::is_same_v<V, QPoly>)
      return v;
    else
      return v.poly();
  }
};

}  // namespace detail

inline std::unique_ptr<ExprAST> parse_expr(std::string_view text) { return detail::Parser(text).parse(); }

/// Parses a commutative polynomial over ℚ in the variables of `ring`.
inline QPoly parse_poly(std::string_view text, const QRingPtr& ring) {
  auto ast = parse_expr(text);
  using L = detail::Lowered<QPoly>;
  auto make = [&](const Rational& q, const std::string& name) -> L {
    if (name.empty()) return {QPoly::rational(ring, q)};
    auto idx = ring->index_of(name);
    if (!idx) fail(ErrorCode::UndeclaredVariable, "undeclared variable " + name);
    return {QPoly::variable(ring, *idx)};
  };
  auto mul = [](const L& a, const L& b) -> L { return {a.v * b.v}; };
  return detail::lower<L>(*ast, make, mul).v;
}

/// Parses a differential operator; products are taken in the Weyl algebra, so
/// "Dx*x" is x*Dx + 1.
inline QWeylOp parse_operator(std::string_view text, const QWeylRing& ring) {
  auto ast = parse_expr(text);
  using L = detail::Lowered<QWeylOp>;
  auto make = [&](const Rational& q, const std::string& name) -> L {
    if (name.empty()) return {QWeylOp::rational(ring, q)};
    auto idx = ring.ring->index_of(name);
    if (!idx) fail(ErrorCode::UndeclaredVariable, "undeclared variable " + name);
    return {QWeylOp::var(ring, *idx)};
  };
  auto mul = [](const L& a, const L& b) -> L { return {a.v * b.v}; };
  return detail::lower<L>(*ast, make, mul).v;
}

/// Instance from polynomial strings. Parameters stay in the ring as central
/// variables when `params_in_ring` is set (the default whenever there are any).
inline QInstance parse_instance(const std::vector<std::string>& xs, const std::vector<std::string>& fs,
                                const std::vector<std::string>& params = {}, std::vector<int> v = {},
                                std::optional<bool> params_in_ring = std::nullopt) {
  auto vars = VarRegistry::make(xs, fs.size(), params);
  const bool keep = params_in_ring.value_or(!params.empty());
  auto ring = instance_ring(RationalField{}, vars, keep);
  std::vector<QPoly> polys;
  for (const auto& f : fs) polys.push_back(parse_poly(f, ring));
  return make_instance(RationalField{}, vars, polys, std::move(v), keep);
}

}  // namespace bsgen
