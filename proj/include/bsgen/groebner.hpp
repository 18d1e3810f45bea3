#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsgen/groebner_engine.hpp"

namespace bsgen {

/// An ideal in a commutative polynomial ring, optionally with its reduced
/// Gröbner basis with respect to the order of `ring`.
template <CoefficientField F>
struct Ideal {
  RingPtr<F> ring;
  std::vector<Poly<F>> gens;
  std::optional<std::vector<Poly<F>>> basis;

  bool has_basis() const { return basis.has_value(); }

  const std::vector<Poly<F>>& gb() const {
    if (!basis) fail(ErrorCode::MissingBasis, "ideal has no cached Gröbner basis");
    return *basis;
  }

  bool is_unit() const {
    const auto& g = gb();
    return g.size() == 1 && g[0].is_constant() && !g[0].is_zero();
  }

  bool is_zero() const { return gb().empty(); }
};

using IdealC = Ideal<RationalField>;

struct CommutativeMult {
  template <CoefficientField F>
  Poly<F> operator()(const typename F::value_type& c, const Monomial& m, const Poly<F>& g) const {
    return g.mul_term(c, m);
  }
};

/// Reduced Gröbner basis of ⟨gens⟩ for `order` (sorted ascending by lead monomial, monic).
template <CoefficientField F>
Ideal<F> buchberger(const std::vector<Poly<F>>& gens, const TermOrder& order, const GroebnerBudget& budget = {}) {
  if (gens.empty()) fail(ErrorCode::InvalidInput, "buchberger needs at least one generator (use the zero polynomial)");
  const auto& base = gens.front().ring();
  for (const auto& g : gens)
    if (!g.ring()->compatible(*base)) fail(ErrorCode::MixedRing, "generators live in different rings");
  if (base->is_weyl()) fail(ErrorCode::MixedRing, "commutative buchberger called on a Weyl algebra");
  auto ring = base->with_order(order);
  GroebnerOptions<F> opts;
  opts.budget = budget;
  detail::BuchbergerEngine<F, CommutativeMult> engine(ring, CommutativeMult{}, true, opts);
  std::vector<Poly<F>> mapped;
  for (const auto& g : gens) mapped.push_back(g.with_ring(ring));
  auto res = engine.run(mapped);
  return Ideal<F>{ring, mapped, std::move(res.basis)};
}

template <CoefficientField F>
Ideal<F> buchberger(const std::vector<Poly<F>>& gens, const GroebnerBudget& budget = {}) {
  if (gens.empty()) fail(ErrorCode::InvalidInput, "buchberger needs at least one generator");
  return buchberger(gens, gens.front().ring()->order, budget);
}

template <CoefficientField F>
struct Division {
  std::vector<Poly<F>> quotients;
  Poly<F> remainder;
};

/// Multivariate division by a list of polynomials (first divisor wins).
template <CoefficientField F>
Division<F> divide(const Poly<F>& f, const std::vector<Poly<F>>& divisors) {
  const auto& ring = divisors.empty() ? f.ring() : divisors.front().ring();
  const F& fld = ring->field;
  Poly<F> p = f.with_ring(ring);
  Division<F> out{std::vector<Poly<F>>(divisors.size(), Poly<F>(ring)), Poly<F>(ring)};
  std::vector<typename Poly<F>::Term> rest;
  while (!p.is_zero()) {
    const auto lt = p.lead();
    bool reduced = false;
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      const auto& g = divisors[k];
      if (g.is_zero() || !g.lm().divides(lt.mono)) continue;
      auto c = fld.div(lt.coeff, g.lc());
      auto q = lt.mono / g.lm();
      p = p - g.mul_term(c, q);
      out.quotients[k] = out.quotients[k] + Poly<F>::monomial(ring, q, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      rest.push_back(lt);
      p = p - Poly<F>::monomial(ring, lt.mono, lt.coeff);
    }
  }
  out.remainder = Poly<F>::from_terms(ring, std::move(rest));
  return out;
}

/// Canonical remainder of f modulo the cached basis; zero iff f lies in the ideal.
template <CoefficientField F>
Poly<F> normal_form(const Poly<F>& f, const Ideal<F>& ideal) {
  return divide(f, ideal.gb()).remainder;
}

template <CoefficientField F>
Poly<F> normal_form(const Poly<F>& f, const Ideal<F>& ideal, const TermOrder& order) {
  if (!ideal.has_basis()) fail(ErrorCode::MissingBasis, "normal_form needs a Gröbner basis");
  if (ideal.ring->order.describe() != order.describe()) fail(ErrorCode::MissingBasis, "cached basis uses a different order");
  return normal_form(f, ideal);
}

template <CoefficientField F>
bool contains(const Ideal<F>& ideal, const Poly<F>& f) {
  return normal_form(f, ideal).is_zero();
}

/// Generators of ideal ∩ K[remaining variables], via a block elimination order.
template <CoefficientField F>
Ideal<F> eliminate(const Ideal<F>& ideal, const std::vector<int>& front_vars, const GroebnerBudget& budget = {}) {
  auto order = TermOrder::block(front_vars, TermOrder::degrevlex());
  const auto& gens = ideal.has_basis() ? ideal.gb() : ideal.gens;
  std::vector<Poly<F>> input = gens;
  if (input.empty()) input.push_back(Poly<F>(ideal.ring));
  auto full = buchberger(input, order, budget);
  std::vector<Poly<F>> kept;
  for (const auto& g : full.gb())
    if (!g.involves_any(front_vars)) kept.push_back(g);
  return Ideal<F>{full.ring, kept, kept};
}

/// Krull dimension of K[vars]/I from the lead-monomial ideal: the largest set of
/// variables none of whose pure monomials is a leading monomial. −1 for the unit ideal.
template <CoefficientField F>
int ideal_dim(const Ideal<F>& ideal) {
  const auto& g = ideal.gb();
  if (ideal.is_unit()) return -1;
  const int n = static_cast<int>(ideal.ring->nvars());
  if (n > 24) fail(ErrorCode::InvalidInput, "ideal_dim: too many variables for subset enumeration");
  std::vector<unsigned long> supports;
  for (const auto& p : g) {
    unsigned long mask = 0;
    for (int i = 0; i < n; ++i)
      if (p.lm()[i] > 0) mask |= 1ul << i;
    supports.push_back(mask);
  }
  int best = 0;
  for (unsigned long set = 0; set < (1ul << n); ++set) {
    int size = __builtin_popcountl(set);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~set) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

/// Adjoins a fresh variable to a commutative ring (used by the Rabinowitsch trick).
template <CoefficientField F>
RingPtr<F> extend_ring(const RingPtr<F>& ring, const std::string& name, TermOrder order) {
  auto r = std::make_shared<PolyRing<F>>(*ring);
  std::string fresh = name;
  while (r->index_of(fresh)) fresh += "_";
  r->names.push_back(fresh);
  r->order = std::move(order);
  return r;
}

/// g ∈ √I, decided by 1 ∈ I + ⟨1 − z·g⟩.
template <CoefficientField F>
bool radical_member(const Ideal<F>& ideal, const Poly<F>& g, const GroebnerBudget& budget = {}) {
  if (g.is_zero()) return true;
  auto ring = extend_ring(ideal.ring, "_z", TermOrder::degrevlex());
  int z = static_cast<int>(ring->nvars()) - 1;
  std::vector<Poly<F>> gens;
  const auto& src = ideal.has_basis() ? ideal.gb() : ideal.gens;
  for (const auto& p : src) gens.push_back(p.map_to(ring));
  gens.push_back(Poly<F>::one(ring) - Poly<F>::variable(ring, z) * g.map_to(ring));
  return buchberger(gens, budget).is_unit();
}

/// Ideal with its basis computed in the ring's own order.
template <CoefficientField F>
Ideal<F> make_ideal(const RingPtr<F>& ring, std::vector<Poly<F>> gens, const GroebnerBudget& budget = {}) {
  if (gens.empty()) gens.push_back(Poly<F>(ring));
  return buchberger(gens, ring->order, budget);
}

}  // namespace bsgen
