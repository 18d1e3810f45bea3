#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bsgen/residue.hpp"

namespace bsgen {

namespace detail {

inline IdealC ideal_plus(const IdealC& I, const QPoly& g, const GroebnerBudget& budget) {
  std::vector<QPoly> gens = I.has_basis() ? I.gb() : I.gens;
  gens.push_back(g.map_to(I.ring));
  return make_ideal(I.ring, gens, budget);
}

/// Primality certificate for an ideal none of whose basis elements split:
/// the zero ideal, or a lex basis that is triangular in linear leads plus at
/// most one irreducible polynomial in the remaining variables.
inline bool certified_prime(const IdealC& I, const GroebnerBudget& budget) {
  if (I.is_zero()) return true;
  auto lexI = buchberger(I.gb(), TermOrder::lex(), budget);
  int nonlinear = 0;
  for (const auto& g : lexI.gb()) {
    const auto& lm = g.lm();
    if (lm.degree() == 1) continue;  // x_i − (terms free of the other leads)
    if (++nonlinear > 1) return false;
    auto fz = factor(g);
    if (!fz.complete || fz.factors.size() != 1 || fz.factors[0].second != 1) return false;
  }
  return true;
}

inline bool ideal_contains(const IdealC& big, const IdealC& small) {
  for (const auto& g : small.gb())
    if (!contains(big, g.with_ring(big.ring))) return false;
  return true;
}

inline void collect_primes(const IdealC& I, std::vector<IdealC>& out, int depth, const GroebnerBudget& budget) {
  if (I.is_unit()) return;
  if (depth > 64) fail(ErrorCode::DecompositionUnsupported, "prime splitting did not terminate");
  for (const auto& g : I.gb()) {
    if (g.is_constant()) continue;
    auto fz = factor(g);
    if (fz.factors.size() == 1 && fz.factors[0].second == 1) continue;
    // V(I) = ∪ V(I + ⟨g_i⟩) over the distinct factors g_i of g.
    for (const auto& [gi, e] : fz.factors) collect_primes(ideal_plus(I, gi, budget), out, depth + 1, budget);
    return;
  }
  if (!certified_prime(I, budget))
    fail(ErrorCode::DecompositionUnsupported, "cannot certify primality of an ideal with basis size " +
                                                  std::to_string(I.gb().size()));
  out.push_back(I);
}

}  // namespace detail

/// Minimal primes of I ⊂ ℚ[a], each certified. Sorted by decreasing dimension,
/// then by the printed basis. UnitIdeal for ⟨1⟩; DecompositionUnsupported when a
/// component cannot be certified prime with the available tools.
inline std::vector<PrimeIdealQ> minimal_primes(const IdealC& I_in, const GroebnerBudget& budget = {}) {
  IdealC I = I_in.has_basis() ? I_in : make_ideal(I_in.ring, I_in.gens, budget);
  if (I.is_unit()) fail(ErrorCode::UnitIdeal, "the unit ideal has no prime components");
  std::vector<IdealC> found;
  detail::collect_primes(I, found, 0, budget);
  std::vector<IdealC> minimal;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < found.size() && !drop; ++j) {
      if (i == j || !detail::ideal_contains(found[i], found[j])) continue;
      // found[j] ⊆ found[i]: drop i unless they are equal and i comes first.
      drop = !detail::ideal_contains(found[j], found[i]) || j < i;
    }
    if (!drop) minimal.push_back(found[i]);
  }
  auto key = [](const IdealC& P) {
    std::string s;
    for (const auto& g : P.gb()) s += g.to_string() + ";";
    return std::make_pair(-ideal_dim(P), s);
  };
  std::sort(minimal.begin(), minimal.end(), [&](const IdealC& a, const IdealC& b) { return key(a) < key(b); });
  std::vector<PrimeIdealQ> out;
  for (auto& P : minimal) out.push_back(PrimeIdealQ{std::move(P), true});
  return out;
}

}  // namespace bsgen
