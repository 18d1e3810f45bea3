#pragma once

#include <optional>
#include <vector>

#include "bsgen/groebner.hpp"
#include "bsgen/weyl.hpp"

namespace bsgen {

/// Left ideal of a Weyl algebra, optionally with a reduced left Gröbner basis
/// (w.r.t. the order of `ring`) and the cofactors of the tracked generators.
template <CoefficientField F>
struct LeftIdealW {
  WeylRing<F> ring;
  std::vector<WeylOp<F>> gens;
  std::optional<std::vector<WeylOp<F>>> basis;
  std::vector<std::vector<WeylOp<F>>> cofactors;
  GroebnerStats stats;

  const std::vector<WeylOp<F>>& gb() const {
    if (!basis) fail(ErrorCode::MissingBasis, "left ideal has no cached Gröbner basis");
    return *basis;
  }

  bool contains_one() const {
    const auto& g = gb();
    return g.size() == 1 && g[0].poly().is_constant() && !g[0].is_zero();
  }
};

/// Every monomial order is admissible for a Weyl algebra: the leading monomial
/// of ∂·x is x∂ and the commutator term 1 is smaller. Checked on the ring's pairs.
template <CoefficientField F>
void check_admissible(const WeylRing<F>& ring, const TermOrder& order) {
  const auto& r = *ring.ring;
  for (std::size_t i = 0; i < r.derivation_of.size(); ++i) {
    int d = r.derivation_of[i];
    if (d < 0) continue;
    Monomial top(r.nvars()), one(r.nvars());
    top[i] = 1;
    top[d] = 1;
    if (order.compare(top, one) <= 0) fail(ErrorCode::InvalidInput, "term order is not admissible");
  }
}

template <CoefficientField F>
LeftIdealW<F> left_buchberger(const std::vector<WeylOp<F>>& gens, const TermOrder& order,
                              const GroebnerOptions<F>& opts = {}) {
  if (gens.empty()) fail(ErrorCode::InvalidInput, "left_buchberger needs generators");
  const auto& base = gens.front().ring();
  for (const auto& g : gens)
    if (!(g.ring() == base)) fail(ErrorCode::RingMismatch, "generators live in different Weyl rings");
  check_admissible(base, order);
  WeylRing<F> ring = base.with_order(order);
  std::vector<Poly<F>> polys;
  std::vector<WeylOp<F>> mapped;
  for (const auto& g : gens) {
    polys.push_back(g.poly().with_ring(ring.ring));
    mapped.emplace_back(ring, polys.back());
  }
  detail::BuchbergerEngine<F, WeylMult> engine(ring.ring, WeylMult{}, false, opts);
  auto res = engine.run(polys);
  LeftIdealW<F> out{ring, mapped, std::vector<WeylOp<F>>{}, {}, res.stats};
  for (auto& b : res.basis) out.basis->emplace_back(ring, std::move(b));
  for (auto& cs : res.cofactors) {
    std::vector<WeylOp<F>> row;
    for (auto& c : cs) row.emplace_back(ring, std::move(c));
    out.cofactors.push_back(std::move(row));
  }
  return out;
}

/// Remainder of A modulo the cached left Gröbner basis.
template <CoefficientField F>
WeylOp<F> left_normal_form(const WeylOp<F>& a, const LeftIdealW<F>& ideal) {
  const auto& basis = ideal.gb();
  const auto& ring = ideal.ring;
  const F& fld = ring.ring->field;
  Poly<F> p = a.poly().with_ring(ring.ring);
  std::vector<typename Poly<F>::Term> kept;
  WeylMult mult;
  while (!p.is_zero()) {
    const auto lt = p.lead();
    const WeylOp<F>* div = nullptr;
    for (const auto& g : basis)
      if (g.poly().lm().divides(lt.mono)) {
        div = &g;
        break;
      }
    if (!div) {
      kept.push_back(lt);
      p = p - Poly<F>::monomial(ring.ring, lt.mono, lt.coeff);
      continue;
    }
    p = p - mult(fld.div(lt.coeff, div->poly().lc()), lt.mono / div->poly().lm(), div->poly());
  }
  return WeylOp<F>(ring, Poly<F>::from_terms(ring.ring, std::move(kept)));
}

/// Basis elements free of `kill_vars`. They generate the intersection of the
/// left ideal with the subalgebra of the remaining variables when the basis
/// order eliminates `kill_vars` and the remaining block is closed under the relations.
template <CoefficientField F>
std::vector<WeylOp<F>> subring_elements(const LeftIdealW<F>& ideal, const std::vector<int>& kill_vars) {
  if (!ideal.ring.ring->order.eliminates(kill_vars))
    fail(ErrorCode::OrderBlockMismatch, "basis order does not eliminate the requested variables");
  const auto& der = ideal.ring.ring->derivation_of;
  for (std::size_t i = 0; i < der.size(); ++i) {
    if (der[i] < 0) continue;
    bool kx = std::find(kill_vars.begin(), kill_vars.end(), static_cast<int>(i)) != kill_vars.end();
    bool kd = std::find(kill_vars.begin(), kill_vars.end(), der[i]) != kill_vars.end();
    if (kx != kd) fail(ErrorCode::OrderBlockMismatch, "remaining variables are not closed under the Weyl relations");
  }
  std::vector<WeylOp<F>> out;
  for (const auto& g : ideal.gb())
    if (!g.poly().involves_any(kill_vars)) out.push_back(g);
  return out;
}

/// Multi-degree of a homogeneous operator under several weight vectors;
/// nullopt when it is not homogeneous for one of them.
template <CoefficientField F>
std::optional<std::vector<long>> multi_weight(const WeylOp<F>& a, const std::vector<WeightVector>& ws) {
  std::vector<long> d;
  for (const auto& w : ws) {
    if (!is_homogeneous(a.poly(), w)) return std::nullopt;
    d.push_back(a.is_zero() ? 0 : weight_of(a.poly().lm(), w));
  }
  return d;
}

/// Weight vectors w_j with w(t_j) = 1, w(∂t_j) = −1, w(u_j) = 1, w(y_j) = −1, 0 elsewhere.
template <CoefficientField F>
std::vector<WeightVector> malgrange_weights(const WeylRing<F>& ring) {
  std::vector<WeightVector> ws;
  for (std::size_t j = 0; j < ring.layout.t.size(); ++j) {
    WeightVector w(ring.ring->nvars(), 0);
    w[ring.layout.t[j]] = 1;
    w[ring.layout.dt[j]] = -1;
    if (j < ring.layout.u.size()) w[ring.layout.u[j]] = 1;
    if (j < ring.layout.y.size()) w[ring.layout.y[j]] = -1;
    ws.push_back(std::move(w));
  }
  return ws;
}

/// The weight-zero elements of a homogeneous family. In each returned element
/// t_j and ∂t_j occur with equal exponents in every monomial.
template <CoefficientField F>
std::vector<WeylOp<F>> weight0_extract(const std::vector<WeylOp<F>>& elems, const std::vector<WeightVector>& ws) {
  std::vector<WeylOp<F>> out;
  for (const auto& g : elems) {
    auto d = multi_weight(g, ws);
    if (!d) fail(ErrorCode::HomogeneityViolation, "non-homogeneous element " + g.to_string());
    if (std::all_of(d->begin(), d->end(), [](long v) { return v == 0; })) out.push_back(g);
  }
  return out;
}

template <CoefficientField F>
std::vector<WeylOp<F>> weight0_extract(const LeftIdealW<F>& ideal, const std::vector<WeightVector>& ws) {
  return weight0_extract(ideal.gb(), ws);
}

/// Moves every homogeneous element to weight zero by left multiplication with
/// ∂t_j^d (weight d > 0) or t_j^{−d} (weight d < 0). Together these generate the
/// weight-zero part of the left ideal over the weight-zero subalgebra.
template <CoefficientField F>
std::vector<WeylOp<F>> lift_to_weight0(const std::vector<WeylOp<F>>& elems, const std::vector<WeightVector>& ws) {
  std::vector<WeylOp<F>> out;
  for (const auto& g : elems) {
    auto d = multi_weight(g, ws);
    if (!d) fail(ErrorCode::HomogeneityViolation, "non-homogeneous element " + g.to_string());
    const auto& r = g.ring();
    Monomial m(r.ring->nvars());
    for (std::size_t j = 0; j < d->size(); ++j) {
      long dj = (*d)[j];
      if (dj > 0) m[r.layout.dt[j]] = static_cast<int>(dj);
      if (dj < 0) m[r.layout.t[j]] = static_cast<int>(-dj);
    }
    out.emplace_back(r, WeylMult{}(r.ring->field.one(), m, g.poly()));
  }
  return out;
}

}  // namespace bsgen
