#pragma once

#include <gmpxx.h>

#include <concepts>
#include <optional>
#include <string>

#include "bsgen/error.hpp"

namespace bsgen {

using Rational = mpq_class;
using Integer = mpz_class;

/// Coefficient fields are passed around as small value objects that carry any
/// context the element arithmetic needs (the residue field carries its prime ideal).
template <class F>
concept CoefficientField = requires(const F& f, const typename F::value_type& a, const Rational& q) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_rational(q) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.is_one(a) } -> std::same_as<bool>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.div(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.to_rational(a) } -> std::same_as<std::optional<Rational>>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.same(f) } -> std::same_as<bool>;
};

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rational_string(const Rational& q) { return q.get_str(); }

/// The field of rational numbers.
struct RationalField {
  using value_type = Rational;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from_rational(const Rational& q) const { return q; }
  bool is_zero(const Rational& a) const { return sgn(a) == 0; }
  bool is_one(const Rational& a) const { return a == 1; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational div(const Rational& a, const Rational& b) const {
    if (sgn(b) == 0) fail(ErrorCode::InvalidInput, "division by zero");
    return a / b;
  }
  Rational neg(const Rational& a) const { return -a; }
  std::optional<Rational> to_rational(const Rational& a) const { return a; }
  std::string to_string(const Rational& a) const { return rational_string(a); }
  bool same(const RationalField&) const { return true; }
  /// Rational coefficients print without parentheses.
  bool atomic(const Rational&) const { return true; }
  bool negative(const Rational& a) const { return sgn(a) < 0; }
};

static_assert(CoefficientField<RationalField>);

}  // namespace bsgen
