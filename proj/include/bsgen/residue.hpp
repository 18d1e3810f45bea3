#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsgen/factor.hpp"

namespace bsgen {

/// A prime ideal of the parameter ring ℚ[a₁..a_m] with its reduced Gröbner
/// basis. `certified` is set when primality was established by minimal_primes
/// (or trivially, for the zero ideal); callers may also assert it.
struct PrimeIdealQ {
  IdealC ideal;
  bool certified = false;

  const QRingPtr& ring() const { return ideal.ring; }
  bool is_zero() const { return ideal.is_zero(); }
  QPoly reduce(const QPoly& p) const { return ideal.is_zero() ? p.with_ring(ideal.ring) : normal_form(p, ideal); }
  bool contains(const QPoly& p) const { return reduce(p).is_zero(); }

  std::string to_string() const {
    if (ideal.is_zero()) return "<0>";
    std::string s = "<";
    for (std::size_t i = 0; i < ideal.gb().size(); ++i) s += (i ? ", " : "") + ideal.gb()[i].to_string();
    return s + ">";
  }
};

inline PrimeIdealQ zero_prime(const QRingPtr& param_ring) {
  return PrimeIdealQ{make_ideal(param_ring, {}), true};
}

inline PrimeIdealQ make_prime(const QRingPtr& param_ring, std::vector<QPoly> gens, bool certified) {
  for (auto& g : gens) g = g.map_to(param_ring);
  auto ideal = make_ideal(param_ring, std::move(gens));
  if (ideal.is_unit()) fail(ErrorCode::UnitIdeal, "a prime ideal must be proper");
  return PrimeIdealQ{std::move(ideal), certified};
}

/// Element of Frac(ℚ[a]/Q), stored as numerator/denominator normal forms.
class ResidueElem {
 public:
  ResidueElem() = default;
  ResidueElem(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {}

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }

 private:
  QPoly num_;
  QPoly den_;
};

/// The residue field Frac(ℚ[a]/Q). Elements are kept with numerator and
/// denominator reduced modulo Q, common factors cancelled, and a monic denominator.
class ResidueField {
 public:
  using value_type = ResidueElem;

  ResidueField() = default;
  explicit ResidueField(PrimeIdealQ prime) : prime_(std::make_shared<const PrimeIdealQ>(std::move(prime))) {}

  const PrimeIdealQ& prime() const { return *prime_; }
  const QRingPtr& param_ring() const { return prime_->ring(); }

  ResidueElem zero() const { return ResidueElem(QPoly(param_ring()), QPoly::one(param_ring())); }
  ResidueElem one() const { return from_rational(Rational(1)); }
  ResidueElem from_rational(const Rational& q) const {
    return ResidueElem(QPoly::rational(param_ring(), q), QPoly::one(param_ring()));
  }
  ResidueElem from_poly(const QPoly& p) const { return make(p.map_to(param_ring()), QPoly::one(param_ring())); }
  ResidueElem from_fraction(const QPoly& num, const QPoly& den) const {
    return make(num.map_to(param_ring()), den.map_to(param_ring()));
  }

  bool is_zero(const ResidueElem& e) const { return e.num().is_zero(); }
  bool is_one(const ResidueElem& e) const { return e.num() == e.den(); }

  ResidueElem add(const ResidueElem& a, const ResidueElem& b) const {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    if (a.den() == b.den()) return make(a.num() + b.num(), a.den());
    return make(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
  }
  ResidueElem sub(const ResidueElem& a, const ResidueElem& b) const { return add(a, neg(b)); }
  ResidueElem mul(const ResidueElem& a, const ResidueElem& b) const {
    if (is_zero(a) || is_zero(b)) return zero();
    if (a.den().is_constant() && b.den().is_constant() && (a.num().is_constant() || b.num().is_constant()))
      return make(a.num() * b.num(), a.den() * b.den(), false);
    return make(a.num() * b.num(), a.den() * b.den());
  }
  ResidueElem div(const ResidueElem& a, const ResidueElem& b) const { return mul(a, inv(b)); }
  ResidueElem neg(const ResidueElem& a) const { return ResidueElem(-a.num(), a.den()); }
  ResidueElem inv(const ResidueElem& a) const {
    if (is_zero(a)) fail(ErrorCode::DivisionByZeroModQ, "inverting an element of Q");
    return make(a.den(), a.num());
  }

  std::optional<Rational> to_rational(const ResidueElem& e) const {
    if (!e.num().is_constant() || !e.den().is_constant()) return std::nullopt;
    if (e.num().is_zero()) return Rational(0);
    return e.num().constant_coeff() / e.den().constant_coeff();
  }

  std::string to_string(const ResidueElem& e) const {
    if (e.den().is_constant() && e.den().constant_coeff() == 1) return e.num().to_string();
    return "(" + e.num().to_string() + ")/(" + e.den().to_string() + ")";
  }
  bool atomic(const ResidueElem& e) const {
    return e.den().is_constant() && e.num().size() == 1 && e.num().is_constant();
  }
  bool negative(const ResidueElem& e) const {
    return e.den().is_constant() && e.num().size() == 1 && sgn(e.num().lc()) < 0;
  }

  bool same(const ResidueField& o) const {
    if (prime_ == o.prime_) return true;
    if (!prime_ || !o.prime_) return false;
    const auto& a = prime_->ideal;
    const auto& b = o.prime_->ideal;
    if (!a.ring->compatible(*b.ring) || a.gb().size() != b.gb().size()) return false;
    for (std::size_t i = 0; i < a.gb().size(); ++i)
      if (!(a.gb()[i] == b.gb()[i])) return false;
    return true;
  }

  /// Canonicalizes num/den: reduce modulo Q, cancel the polynomial gcd of the
  /// representatives, make the denominator monic.
  ResidueElem make(QPoly num, QPoly den, bool cancel = true) const {
    num = prime_->reduce(num);
    den = prime_->reduce(den);
    if (den.is_zero()) fail(ErrorCode::DivisionByZeroModQ, "denominator lies in Q");
    if (num.is_zero()) return zero();
    if (cancel && !den.is_constant()) {
      for (int round = 0; round < 4; ++round) {
        QPoly g = poly_gcd(num, den);
        if (g.is_constant()) break;
        num = prime_->reduce(exact_div(num, g));
        den = prime_->reduce(exact_div(den, g));
        if (den.is_constant()) break;
      }
    }
    Rational lc = den.lc();
    if (lc != 1) {
      num = num.scale(Rational(1) / lc);
      den = den.scale(Rational(1) / lc);
    }
    return ResidueElem(std::move(num), std::move(den));
  }

 private:
  std::shared_ptr<const PrimeIdealQ> prime_;
};

static_assert(CoefficientField<ResidueField>);

/// Multiplicative inverse in Frac(ℚ[a]/Q); DivisionByZeroModQ when e ∈ Q.
inline ResidueElem residue_invert(const ResidueField& field, const ResidueElem& e) { return field.inv(e); }

}  // namespace bsgen
