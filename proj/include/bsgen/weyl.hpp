#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bsgen/residue.hpp"

namespace bsgen {

/// Variable layout of a Weyl algebra Aₙ(R)[s] with the optional t/∂t/u/y blocks.
/// Variables are stored in the canonical normal order x t u ∂x ∂t y s c, where c
/// are extra central variables (the parameters a when R = ℚ[a]).
struct WeylLayout {
  std::vector<int> x, t, u, dx, dt, y, s, central;

  /// Variables that must commute with everything.
  std::vector<int> commuting() const {
    std::vector<int> r = u;
    r.insert(r.end(), y.begin(), y.end());
    r.insert(r.end(), s.begin(), s.end());
    r.insert(r.end(), central.begin(), central.end());
    return r;
  }
};

/// Descriptor of a Weyl algebra: the polynomial ring holding the normally ordered
/// monomials plus the layout of the variable blocks.
template <CoefficientField F>
struct WeylRing {
  RingPtr<F> ring;
  WeylLayout layout;

  std::size_t n() const { return layout.x.size(); }
  std::size_t p() const { return has_aux() ? layout.t.size() : layout.s.size(); }
  bool has_aux() const { return !layout.t.empty(); }

  WeylRing with_order(TermOrder o) const { return WeylRing{ring->with_order(std::move(o)), layout}; }

  bool operator==(const WeylRing& o) const { return ring->compatible(*o.ring); }
};

inline std::string derivation_name(const std::string& v) { return "D" + v; }

/// Builds Aₙ(R)[s] (aux = false) or, with aux = true, the ring in x, t_j, u_j,
/// ∂x, ∂t_j, y_j used for the annihilator elimination (s only fixes p there).
template <CoefficientField F>
WeylRing<F> make_weyl_ring(F field, const std::vector<std::string>& xs, const std::vector<std::string>& ss, bool aux,
                           const std::vector<std::string>& central = {}, TermOrder order = TermOrder::degrevlex()) {
  if (xs.empty()) fail(ErrorCode::InvalidInput, "Weyl algebra needs at least one x-variable");
  const std::size_t p = ss.size();
  std::vector<std::string> names;
  WeylLayout L;
  auto push = [&](std::vector<int>& block, const std::string& name) {
    block.push_back(static_cast<int>(names.size()));
    names.push_back(name);
  };
  auto aux_name = [&](const std::string& base, std::size_t j) { return "_" + (p == 1 ? base : base + std::to_string(j + 1)); };
  for (const auto& x : xs) push(L.x, x);
  if (aux)
    for (std::size_t j = 0; j < p; ++j) push(L.t, aux_name("t", j));
  if (aux)
    for (std::size_t j = 0; j < p; ++j) push(L.u, aux_name("u", j));
  for (const auto& x : xs) push(L.dx, derivation_name(x));
  if (aux)
    for (std::size_t j = 0; j < p; ++j) push(L.dt, derivation_name(aux_name("t", j)));
  if (aux)
    for (std::size_t j = 0; j < p; ++j) push(L.y, aux_name("y", j));
  if (!aux)
    for (const auto& s : ss) push(L.s, s);
  for (const auto& c : central) push(L.central, c);
  auto r = std::make_shared<PolyRing<F>>();
  r->field = std::move(field);
  r->names = std::move(names);
  r->order = std::move(order);
  r->derivation_of.assign(r->names.size(), -1);
  for (std::size_t i = 0; i < L.x.size(); ++i) r->derivation_of[L.x[i]] = L.dx[i];
  for (std::size_t j = 0; j < L.t.size(); ++j) r->derivation_of[L.t[j]] = L.dt[j];
  for (std::size_t i = 0; i < r->names.size(); ++i)
    for (std::size_t k = i + 1; k < r->names.size(); ++k)
      if (r->names[i] == r->names[k]) fail(ErrorCode::InvalidInput, "duplicate variable name " + r->names[i]);
  return WeylRing<F>{r, L};
}

namespace detail {

/// c1·m1 · c2·m2 in normal order, accumulated into `acc`:
/// ∂^b x^c = Σ_k C(b,k)·c!/(c−k)!·x^{c−k} ∂^{b−k} for every (x, ∂) pair.
template <CoefficientField F>
void weyl_monomial_product(const PolyRing<F>& ring, const typename F::value_type& c, const Monomial& m1,
                           const Monomial& m2, std::unordered_map<Monomial, typename F::value_type, MonomialHash>& acc) {
  const F& fld = ring.field;
  struct Pair {
    int pos, der, bound;
  };
  std::vector<Pair> active;
  for (std::size_t i = 0; i < ring.derivation_of.size(); ++i) {
    int d = ring.derivation_of[i];
    if (d < 0) continue;
    int bound = std::min(m1[d], m2[i]);
    if (bound > 0) active.push_back({static_cast<int>(i), d, bound});
  }
  Monomial base = m1 * m2;
  auto emit = [&](Monomial m, const typename F::value_type& v) {
    auto it = acc.find(m);
    if (it == acc.end())
      acc.emplace(std::move(m), v);
    else
      it->second = fld.add(it->second, v);
  };
  if (active.empty()) {
    emit(std::move(base), c);
    return;
  }
  std::vector<int> k(active.size(), 0);
  while (true) {
    Integer mult = 1;
    Monomial m = base;
    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto& pr = active[a];
      if (k[a] == 0) continue;
      Integer bin;
      mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(m1[pr.der]), static_cast<unsigned long>(k[a]));
      mult *= bin;
      for (int q = 0; q < k[a]; ++q) mult *= (m2[pr.pos] - q);
      m[pr.pos] -= k[a];
      m[pr.der] -= k[a];
    }
    emit(std::move(m), fld.mul(c, fld.from_rational(Rational(mult))));
    std::size_t a = 0;
    while (a < active.size() && ++k[a] > active[a].bound) k[a++] = 0;
    if (a == active.size()) break;
  }
}

}  // namespace detail

/// Normally ordered product of two operators stored as polynomials of a Weyl ring.
template <CoefficientField F>
Poly<F> weyl_mul(const Poly<F>& a, const Poly<F>& b) {
  const auto& ring = a.ring();
  if (!ring->compatible(*b.ring())) fail(ErrorCode::RingMismatch, "operators live in different rings");
  if (a.is_zero() || b.is_zero()) return Poly<F>(ring);
  std::unordered_map<Monomial, typename F::value_type, MonomialHash> acc;
  const F& fld = ring->field;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) detail::weyl_monomial_product(*ring, fld.mul(s.coeff, t.coeff), s.mono, t.mono, acc);
  return Poly<F>::from_map(ring, acc);
}

/// Left multiplication by c·m; the engine's multiplication policy for left ideals.
struct WeylMult {
  template <CoefficientField F>
  Poly<F> operator()(const typename F::value_type& c, const Monomial& m, const Poly<F>& g) const {
    const auto& ring = g.ring();
    bool plain = true;
    for (std::size_t i = 0; i < ring->derivation_of.size() && plain; ++i) {
      int d = ring->derivation_of[i];
      if (d >= 0 && m[d] > 0 && g.involves(static_cast<int>(i))) plain = false;
    }
    if (plain) return g.mul_term(c, m);
    std::unordered_map<Monomial, typename F::value_type, MonomialHash> acc;
    const F& fld = ring->field;
    for (const auto& t : g.terms()) detail::weyl_monomial_product(*ring, fld.mul(c, t.coeff), m, t.mono, acc);
    return Poly<F>::from_map(ring, acc);
  }
};

/// Element of a Weyl algebra in normal order.
template <CoefficientField F>
class WeylOp {
 public:
  using Coeff = typename F::value_type;

  WeylOp() = default;
  WeylOp(WeylRing<F> ring, Poly<F> terms) : ring_(std::move(ring)), p_(std::move(terms)) {
    if (!ring_.ring->compatible(*p_.ring())) fail(ErrorCode::RingMismatch, "operator terms do not match ring");
  }
  explicit WeylOp(WeylRing<F> ring) : ring_(ring), p_(ring.ring) {}

  static WeylOp constant(const WeylRing<F>& r, const Coeff& c) { return WeylOp(r, Poly<F>::constant(r.ring, c)); }
  static WeylOp rational(const WeylRing<F>& r, const Rational& q) { return WeylOp(r, Poly<F>::rational(r.ring, q)); }
  static WeylOp var(const WeylRing<F>& r, int index, int e = 1) { return WeylOp(r, Poly<F>::variable(r.ring, index, e)); }
  static WeylOp x(const WeylRing<F>& r, std::size_t i) { return var(r, r.layout.x.at(i)); }
  static WeylOp dx(const WeylRing<F>& r, std::size_t i) { return var(r, r.layout.dx.at(i)); }
  static WeylOp s(const WeylRing<F>& r, std::size_t j) { return var(r, r.layout.s.at(j)); }

  const WeylRing<F>& ring() const { return ring_; }
  const Poly<F>& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  std::size_t size() const { return p_.size(); }

  WeylOp operator+(const WeylOp& o) const { return WeylOp(ring_, p_ + o.p_); }
  WeylOp operator-(const WeylOp& o) const { return WeylOp(ring_, p_ - o.p_); }
  WeylOp operator-() const { return WeylOp(ring_, -p_); }
  WeylOp operator*(const WeylOp& o) const { return op_product(*this, o); }
  WeylOp scale(const Coeff& c) const { return WeylOp(ring_, p_.scale(c)); }
  bool operator==(const WeylOp& o) const { return p_ == o.p_; }

  WeylOp with_order(const TermOrder& o) const {
    auto r = ring_.with_order(o);
    return WeylOp(r, p_.with_ring(r.ring));
  }

  int total_degree() const { return p_.total_degree(); }
  std::string to_string() const { return p_.to_string(); }

  friend WeylOp op_product(const WeylOp& a, const WeylOp& b) {
    if (!(a.ring_ == b.ring_)) fail(ErrorCode::RingMismatch, "op_product: different Weyl rings");
    return WeylOp(a.ring_, weyl_mul(a.p_, b.p_.with_ring(a.ring_.ring)));
  }

 private:
  WeylRing<F> ring_;
  Poly<F> p_;
};

using QWeylRing = WeylRing<RationalField>;
using QWeylOp = WeylOp<RationalField>;

template <CoefficientField F>
struct ScaleCleared;

/// Result of clearing denominators: h·A = U with U over ℚ[a] (integer coefficients).
template <>
struct ScaleCleared<ResidueField> {
  QPoly h;
  QWeylOp op;
};

template <>
struct ScaleCleared<RationalField> {
  Rational h;
  QWeylOp op;
};

/// The same Weyl algebra over ℚ with the parameters appended as central variables.
inline QWeylRing lift_weyl_ring(const WeylRing<ResidueField>& r) {
  auto pr = r.ring->field.param_ring();
  std::vector<std::string> xs, ss;
  for (int i : r.layout.x) xs.push_back(r.ring->names[i]);
  for (int j : r.layout.s) ss.push_back(r.ring->names[j]);
  if (r.has_aux())
    for (std::size_t j = 0; j < r.layout.t.size(); ++j) ss.push_back("s" + std::to_string(j + 1));
  std::vector<std::string> central;
  for (int c : r.layout.central) central.push_back(r.ring->names[c]);
  for (const auto& a : pr->names) central.push_back(a);
  return make_weyl_ring(RationalField{}, xs, ss, r.has_aux(), central);
}

/// Integer lcm of the coefficient denominators of an operator over ℚ.
inline Integer denominator_lcm(const QPoly& p) {
  Integer l = 1;
  for (const auto& t : p.terms()) {
    Integer d = t.coeff.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

/// Clears the integer denominators of an operator over ℚ.
inline ScaleCleared<RationalField> op_scale_clear(const QWeylOp& a) {
  Integer l = denominator_lcm(a.poly());
  return {Rational(l), a.scale(Rational(l))};
}

/// Clears the denominators of an operator over Frac(ℚ[a]/Q): returns (h, U)
/// with h = d·lcm(denominators) ∉ Q and U = h·A over ℚ[a] with integer
/// coefficients, numerators reduced modulo Q.
inline ScaleCleared<ResidueField> op_scale_clear(const WeylOp<ResidueField>& a) {
  const auto& field = a.ring().ring->field;
  const auto& pr = field.param_ring();
  QPoly L = QPoly::one(pr);
  for (const auto& t : a.poly().terms()) L = poly_lcm(L, t.coeff.den());
  QWeylRing target = lift_weyl_ring(a.ring());
  const std::size_t nbase = a.ring().ring->nvars();
  std::vector<QPoly::Term> terms;
  for (const auto& t : a.poly().terms()) {
    QPoly c = field.prime().reduce(t.coeff.num() * exact_div(L, t.coeff.den()));
    for (const auto& ct : c.terms()) {
      Monomial m(target.ring->nvars());
      for (std::size_t i = 0; i < nbase; ++i) m[i] = t.mono[i];
      for (std::size_t k = 0; k < pr->nvars(); ++k) m[nbase + k] = ct.mono[k];
      terms.push_back({std::move(m), ct.coeff});
    }
  }
  QPoly u = QPoly::from_terms(target.ring, std::move(terms));
  Integer d = denominator_lcm(u);
  for (const auto& t : L.terms()) {
    Integer den = t.coeff.get_den();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
  }
  return {L.scale(Rational(d)), QWeylOp(target, u.scale(Rational(d)))};
}

}  // namespace bsgen
