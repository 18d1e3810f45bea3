#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bsgen/poly.hpp"

namespace bsgen {

/// Hard limits for a single Gröbner run. Exceeding any of them raises TimeoutBudget.
struct GroebnerBudget {
  std::size_t max_steps = 2'000'000;  // reduction steps
  std::size_t max_basis = 4'000;
  std::size_t max_terms = 200'000;  // terms in any intermediate polynomial
};

/// Runtime counters of a finished (or aborted) run.
struct GroebnerStats {
  std::size_t steps = 0;
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;
};

template <CoefficientField F>
struct GroebnerResult {
  std::vector<Poly<F>> basis;
  /// cofactors[k][i]: coefficient of the i-th tracked input generator in basis[k],
  /// modulo the untracked generators.
  std::vector<std::vector<Poly<F>>> cofactors;
  GroebnerStats stats;
};

/// Homogeneity bookkeeping: weight vectors under which every element must stay homogeneous.
using WeightVector = std::vector<long>;

inline long weight_of(const Monomial& m, const WeightVector& w) {
  long d = 0;
  for (std::size_t i = 0; i < w.size() && i < m.size(); ++i) d += w[i] * m[i];
  return d;
}

template <CoefficientField F>
bool is_homogeneous(const Poly<F>& p, const WeightVector& w) {
  if (p.is_zero()) return true;
  long d = weight_of(p.lm(), w);
  return std::all_of(p.terms().begin(), p.terms().end(), [&](const auto& t) { return weight_of(t.mono, w) == d; });
}

template <CoefficientField F>
struct GroebnerOptions {
  GroebnerBudget budget;
  std::vector<WeightVector> homogeneity;
  std::vector<std::size_t> tracked;
};

namespace detail {

/// Buchberger's algorithm with the normal selection strategy. `Mult(c, m, g)`
/// returns c·m·g, the left product of the monomial m with g; in the
/// commutative case it is a plain term product, in a Weyl algebra the
/// normally ordered product. The coprime-leads criterion is applied only when
/// `commutative` is set; the chain criterion is always applied.
template <CoefficientField F, class Mult>
class BuchbergerEngine {
 public:
  using P = Poly<F>;
  using Coeff = typename F::value_type;

  BuchbergerEngine(RingPtr<F> ring, Mult mult, bool commutative, const GroebnerOptions<F>& opts)
      : ring_(std::move(ring)), mult_(std::move(mult)), commutative_(commutative), opts_(opts) {}

  GroebnerResult<F> run(const std::vector<P>& gens) {
    const std::size_t ntr = opts_.tracked.size();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      P g = gens[i].with_ring(ring_);
      std::vector<P> cof(ntr, P(ring_));
      for (std::size_t k = 0; k < ntr; ++k)
        if (opts_.tracked[k] == i) cof[k] = P::one(ring_);
      check_homogeneous(g);
      reduce(g, cof);
      if (!g.is_zero()) insert(std::move(g), std::move(cof));
    }
    while (!pending_.empty()) {
      auto it = select();
      auto [i, j] = *it;
      pending_.erase(it);
      if (chain_criterion(i, j)) {
        ++stats_.pairs_skipped;
        continue;
      }
      ++stats_.pairs_reduced;
      auto [s, cof] = spoly(i, j);
      reduce(s, cof);
      if (!s.is_zero()) insert(std::move(s), std::move(cof));
    }
    return finish();
  }

  /// Full left reduction of `p` modulo the current basis. Keeps the invariant
  /// p = Σ cof[k]·gen[k] (modulo untracked generators).
  void reduce(P& p, std::vector<P>& cof) { reduce_impl(p, cof, basis_.size(), {}); }

 private:
  void reduce_impl(P& p, std::vector<P>& cof, std::size_t skip, std::vector<typename P::Term> kept) {
    const F& fld = ring_->field;
    while (!p.is_zero()) {
      const auto& lt = p.lead();
      std::size_t div = basis_.size();
      for (std::size_t k = 0; k < basis_.size(); ++k)
        if (k != skip && basis_[k].lm().divides(lt.mono)) {
          div = k;
          break;
        }
      if (div == basis_.size()) {
        kept.push_back(lt);
        p = p - P::monomial(ring_, lt.mono, lt.coeff);
        continue;
      }
      tick();
      Coeff c = fld.div(lt.coeff, basis_[div].lc());
      Monomial q = lt.mono / basis_[div].lm();
      p = p - mult_(c, q, basis_[div]);
      for (std::size_t k = 0; k < cof.size(); ++k)
        if (!cofactors_[div][k].is_zero()) cof[k] = cof[k] - mult_(c, q, cofactors_[div][k]);
      if (p.size() > opts_.budget.max_terms) fail(ErrorCode::TimeoutBudget, "intermediate polynomial too large");
    }
    p = P::from_terms(ring_, std::move(kept));
  }

  void tick() {
    if (++stats_.steps > opts_.budget.max_steps) fail(ErrorCode::TimeoutBudget, "reduction step budget exhausted");
  }

  void check_homogeneous(const P& p) const {
    for (const auto& w : opts_.homogeneity)
      if (!is_homogeneous(p, w)) fail(ErrorCode::HomogeneityViolation, "element lost weight homogeneity: " + p.to_string());
  }

  void insert(P g, std::vector<P> cof) {
    const F& fld = ring_->field;
    if (!fld.is_one(g.lc())) {
      Coeff inv = fld.div(fld.one(), g.lc());
      g = g.scale(inv);
      for (auto& c : cof) c = c.scale(inv);
    }
    check_homogeneous(g);
    if (basis_.size() >= opts_.budget.max_basis) fail(ErrorCode::TimeoutBudget, "basis size budget exhausted");
    std::size_t k = basis_.size();
    basis_.push_back(std::move(g));
    cofactors_.push_back(std::move(cof));
    for (std::size_t i = 0; i < k; ++i) {
      if (commutative_ && basis_[i].lm().coprime(basis_[k].lm())) {
        ++stats_.pairs_skipped;
        continue;
      }
      pending_.insert({i, k});
    }
  }

  std::set<std::pair<std::size_t, std::size_t>>::iterator select() {
    const auto& order = ring_->order;
    auto best = pending_.begin();
    Monomial best_lcm = lcm(basis_[best->first].lm(), basis_[best->second].lm());
    for (auto it = std::next(pending_.begin()); it != pending_.end(); ++it) {
      Monomial l = lcm(basis_[it->first].lm(), basis_[it->second].lm());
      if (order.compare(l, best_lcm) < 0) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    return best;
  }

  bool is_pending(std::size_t a, std::size_t b) const {
    return pending_.count({std::min(a, b), std::max(a, b)}) > 0;
  }

  bool chain_criterion(std::size_t i, std::size_t j) const {
    Monomial l = lcm(basis_[i].lm(), basis_[j].lm());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == i || k == j) continue;
      if (basis_[k].lm().divides(l) && !is_pending(i, k) && !is_pending(j, k)) return true;
    }
    return false;
  }

  std::pair<P, std::vector<P>> spoly(std::size_t i, std::size_t j) {
    const auto& gi = basis_[i];
    const auto& gj = basis_[j];
    Monomial l = lcm(gi.lm(), gj.lm());
    const F& fld = ring_->field;
    // Both leading coefficients are one.
    P s = mult_(fld.one(), l / gi.lm(), gi) - mult_(fld.one(), l / gj.lm(), gj);
    std::vector<P> cof(opts_.tracked.size(), P(ring_));
    for (std::size_t k = 0; k < cof.size(); ++k)
      cof[k] = mult_(fld.one(), l / gi.lm(), cofactors_[i][k]) - mult_(fld.one(), l / gj.lm(), cofactors_[j][k]);
    return {std::move(s), std::move(cof)};
  }

  GroebnerResult<F> finish() {
    const auto& order = ring_->order;
    // Minimal basis: drop elements whose lead is divisible by another lead.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t k = 0; k < basis_.size() && !redundant; ++k) {
        if (k == i || !basis_[k].lm().divides(basis_[i].lm())) continue;
        redundant = !(basis_[k].lm() == basis_[i].lm()) || k < i;
      }
      if (!redundant) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end(),
              [&](std::size_t a, std::size_t b) { return order.compare(basis_[a].lm(), basis_[b].lm()) < 0; });
    std::vector<P> minimal;
    std::vector<std::vector<P>> mincof;
    for (auto i : keep) {
      minimal.push_back(basis_[i]);
      mincof.push_back(cofactors_[i]);
    }
    // Tail-reduce each element against the others.
    basis_ = minimal;
    cofactors_ = mincof;
    GroebnerResult<F> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      P tail = minimal[i] - P::monomial(ring_, minimal[i].lm(), minimal[i].lc());
      std::vector<P> cof = mincof[i];
      reduce_impl(tail, cof, i, {minimal[i].lead()});
      out.basis.push_back(std::move(tail));
      out.cofactors.push_back(std::move(cof));
    }
    out.stats = stats_;
    return out;
  }

  RingPtr<F> ring_;
  Mult mult_;
  bool commutative_;
  GroebnerOptions<F> opts_;
  std::vector<P> basis_;
  std::vector<std::vector<P>> cofactors_;
  std::set<std::pair<std::size_t, std::size_t>> pending_;
  GroebnerStats stats_;
};

}  // namespace detail
}  // namespace bsgen
