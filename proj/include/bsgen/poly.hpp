#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bsgen/field.hpp"
#include "bsgen/monomial.hpp"
#include "bsgen/term_order.hpp"

namespace bsgen {

/// Variables, coefficient field and term order of a polynomial ring. When
/// `derivation_of` is non-empty the ring is a Weyl algebra: position variable i
/// pairs with derivation derivation_of[i] (-1 for every other variable).
template <CoefficientField F>
struct PolyRing {
  F field;
  std::vector<std::string> names;
  TermOrder order = TermOrder::degrevlex();
  std::vector<int> derivation_of;

  std::size_t nvars() const { return names.size(); }
  bool is_weyl() const { return !derivation_of.empty(); }

  std::optional<int> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }

  int require(std::string_view name) const {
    auto i = index_of(name);
    if (!i) fail(ErrorCode::UndeclaredVariable, std::string(name));
    return *i;
  }

  /// Same variables, relations and field; the term order may differ.
  bool compatible(const PolyRing& other) const {
    return names == other.names && derivation_of == other.derivation_of && field.same(other.field);
  }

  std::shared_ptr<const PolyRing> with_order(TermOrder o) const {
    auto r = std::make_shared<PolyRing>(*this);
    r->order = std::move(o);
    return r;
  }
};

template <CoefficientField F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <CoefficientField F>
RingPtr<F> make_ring(F field, std::vector<std::string> names, TermOrder order = TermOrder::degrevlex()) {
  auto r = std::make_shared<PolyRing<F>>();
  r->field = std::move(field);
  r->names = std::move(names);
  r->order = std::move(order);
  return r;
}

/// Sparse polynomial with terms kept strictly descending in the ring's order
/// and no zero coefficients.
template <CoefficientField F>
class Poly {
 public:
  using Field = F;
  using Coeff = typename F::value_type;
  struct Term {
    Monomial mono;
    Coeff coeff;
  };

  Poly() = default;
  explicit Poly(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr<F> ring, const Coeff& c) {
    Poly p(ring);
    if (!p.field().is_zero(c)) p.terms_.push_back({Monomial(p.ring_->nvars()), c});
    return p;
  }

  static Poly rational(RingPtr<F> ring, const Rational& q) {
    auto c = ring->field.from_rational(q);
    return constant(std::move(ring), c);
  }

  static Poly one(RingPtr<F> ring) {
    auto c = ring->field.one();
    return constant(std::move(ring), c);
  }

  static Poly variable(RingPtr<F> ring, int index, int exponent = 1) {
    Monomial m(ring->nvars());
    m[index] = exponent;
    return monomial(std::move(ring), std::move(m), ring->field.one());
  }

  static Poly monomial(RingPtr<F> ring, Monomial m, Coeff c) {
    Poly p(std::move(ring));
    if (!p.field().is_zero(c)) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  /// Sorts, merges equal monomials and drops zeros.
  static Poly from_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Poly p(std::move(ring));
    const auto& order = p.ring_->order;
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    const F& fld = p.field();
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = fld.add(p.terms_.back().coeff, t.coeff);
        if (fld.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!fld.is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Accumulates terms in a hash map; cheaper than sorting for large products.
  static Poly from_map(RingPtr<F> ring, std::unordered_map<Monomial, Coeff, MonomialHash>& acc) {
    std::vector<Term> ts;
    ts.reserve(acc.size());
    const F& fld = ring->field;
    for (auto& [m, c] : acc)
      if (!fld.is_zero(c)) ts.push_back({m, std::move(c)});
    Poly p(std::move(ring));
    const auto& order = p.ring_->order;
    std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    p.terms_ = std::move(ts);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& lead() const { return terms_.front(); }
  const Monomial& lm() const { return terms_.front().mono; }
  const Coeff& lc() const { return terms_.front().coeff; }

  Coeff constant_coeff() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return field().zero();
  }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
  }

  bool involves(int var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[var] > 0; });
  }

  bool involves_any(const std::vector<int>& vars) const {
    return std::any_of(vars.begin(), vars.end(), [&](int v) { return involves(v); });
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }

  Poly operator+(const Poly& o) const { return merge(o, false); }
  Poly operator-(const Poly& o) const { return merge(o, true); }
  Poly& operator+=(const Poly& o) { return *this = merge(o, false); }
  Poly& operator-=(const Poly& o) { return *this = merge(o, true); }

  /// Commutative product.
  Poly operator*(const Poly& o) const {
    check_ring(o);
    if (is_zero() || o.is_zero()) return Poly(ring_);
    if (o.size() == 1) return mul_term(o.lc(), o.lm());
    if (size() == 1) return o.mul_term(lc(), lm());
    std::unordered_map<Monomial, Coeff, MonomialHash> acc;
    const F& fld = field();
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) {
        auto m = a.mono * b.mono;
        auto c = fld.mul(a.coeff, b.coeff);
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(std::move(m), std::move(c));
        else
          it->second = fld.add(it->second, c);
      }
    return from_map(ring_, acc);
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const Coeff& c) const {
    if (field().is_zero(c)) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
    return r;
  }

  /// Multiplication by c·m; order is preserved because term orders are multiplicative.
  Poly mul_term(const Coeff& c, const Monomial& m) const {
    if (field().is_zero(c)) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field().mul(t.coeff, c)});
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result = one(ring_), base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  Poly monic() const {
    if (is_zero() || field().is_one(lc())) return *this;
    auto inv = field().div(field().one(), lc());
    return scale(inv);
  }

  Poly derivative(int var) const {
    Poly r(ring_);
    for (const auto& t : terms_) {
      if (t.mono[var] == 0) continue;
      Monomial m = t.mono;
      int e = m[var]--;
      r.terms_.push_back({std::move(m), field().mul(t.coeff, field().from_rational(Rational(e)))});
    }
    return r;  // still descending: lowering one exponent uniformly keeps the relative order
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].mono == o.terms_[i].mono)) return false;
      if (!field().is_zero(field().sub(terms_[i].coeff, o.terms_[i].coeff))) return false;
    }
    return true;
  }

  /// Re-sorts the terms for a ring with the same variables and a different order.
  Poly with_ring(RingPtr<F> target) const {
    if (target.get() == ring_.get()) return *this;
    if (!ring_->compatible(*target)) fail(ErrorCode::RingMismatch, "with_ring: incompatible rings");
    return from_terms(std::move(target), terms_);
  }

  /// Maps variables by name into `target`; unknown variables must not occur.
  Poly map_to(RingPtr<F> target) const {
    std::vector<int> where(ring_->nvars(), -1);
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      auto j = target->index_of(ring_->names[i]);
      if (j) where[i] = *j;
    }
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->nvars());
      for (std::size_t i = 0; i < t.mono.size(); ++i) {
        if (t.mono[i] == 0) continue;
        if (where[i] < 0) fail(ErrorCode::RingMismatch, "variable " + ring_->names[i] + " missing in target ring");
        m[where[i]] += t.mono[i];
      }
      ts.push_back({std::move(m), t.coeff});
    }
    return from_terms(std::move(target), std::move(ts));
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += ring_->names[i];
      if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    const F& fld = field();
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Coeff c = t.coeff;
      bool neg = fld.negative(c);
      if (neg) c = fld.neg(c);
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      std::string ms = monomial_string(t.mono);
      if (ms.empty()) {
        out += fld.atomic(c) ? fld.to_string(c) : "(" + fld.to_string(c) + ")";
      } else if (fld.is_one(c)) {
        out += ms;
      } else {
        out += fld.atomic(c) ? fld.to_string(c) : "(" + fld.to_string(c) + ")";
        out += '*' + ms;
      }
    }
    return out;
  }

 private:
  void check_ring(const Poly& o) const {
    if (ring_.get() != o.ring_.get() && !(ring_->compatible(*o.ring_)))
      fail(ErrorCode::MixedRing, "operands live in different rings");
  }

  Poly merge(const Poly& o, bool subtract) const {
    check_ring(o);
    const F& fld = field();
    const auto& order = ring_->order;
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int cmp;
      if (i == terms_.size())
        cmp = -1;
      else if (j == o.terms_.size())
        cmp = 1;
      else
        cmp = order.compare(terms_[i].mono, o.terms_[j].mono);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? fld.neg(t.coeff) : t.coeff});
      } else {
        auto c = subtract ? fld.sub(terms_[i].coeff, o.terms_[j].coeff) : fld.add(terms_[i].coeff, o.terms_[j].coeff);
        if (!fld.is_zero(c)) r.terms_.push_back({terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr<F> ring_;
  std::vector<Term> terms_;
};

using QPoly = Poly<RationalField>;
using QRingPtr = RingPtr<RationalField>;

inline QRingPtr make_qring(std::vector<std::string> names, TermOrder order = TermOrder::degrevlex()) {
  return make_ring(RationalField{}, std::move(names), std::move(order));
}

/// Substitutes rational values for some variables (index → value) and maps the result into `target`.
inline QPoly evaluate(const QPoly& p, const std::vector<std::pair<int, Rational>>& values, const QRingPtr& target) {
  std::vector<QPoly::Term> ts;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    Monomial m = t.mono;
    for (const auto& [var, val] : values) {
      for (int e = 0; e < m[var]; ++e) c *= val;
      m[var] = 0;
    }
    ts.push_back({std::move(m), c});
  }
  return QPoly::from_terms(p.ring(), std::move(ts)).map_to(target);
}

}  // namespace bsgen
