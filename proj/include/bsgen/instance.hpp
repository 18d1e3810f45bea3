#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bsgen/weyl.hpp"

namespace bsgen {

/// Variable names by class: x (n ≥ 1), s (p ≥ 1), parameters a (m ≥ 0).
/// Names starting with D or _ are reserved for derivations and auxiliary variables.
struct VarRegistry {
  std::vector<std::string> x, s, a;

  static std::vector<std::string> default_s_names(std::size_t p) {
    if (p == 1) return {"s"};
    std::vector<std::string> r;
    for (std::size_t j = 1; j <= p; ++j) r.push_back("s" + std::to_string(j));
    return r;
  }

  static VarRegistry make(std::vector<std::string> xs, std::size_t p, std::vector<std::string> as = {}) {
    VarRegistry r{std::move(xs), default_s_names(p), std::move(as)};
    r.validate();
    return r;
  }

  std::size_t n() const { return x.size(); }
  std::size_t p() const { return s.size(); }
  std::size_t m() const { return a.size(); }

  void validate() const {
    if (x.empty()) fail(ErrorCode::InvalidInput, "at least one x-variable is required");
    if (s.empty()) fail(ErrorCode::InvalidInput, "at least one s-variable is required");
    std::set<std::string> seen;
    auto reserved = [&](const std::string& v) {
      return v.empty() || v[0] == 'D' || v[0] == '_';
    };
    for (const auto* block : {&x, &s, &a})
      for (const auto& v : *block) {
        if (!seen.insert(v).second) fail(ErrorCode::InvalidInput, "duplicate variable name " + v);
        if (reserved(v)) fail(ErrorCode::InvalidInput, "variable name " + v + " uses a reserved prefix (D or _)");
      }
  }
};

/// The fixed data (f, v) of a Bernstein-Sato problem. The polynomials live in
/// `ring` = K[x, s] (plus the parameters as variables when they are not folded
/// into the coefficient field).
template <CoefficientField F>
struct ProblemInstance {
  VarRegistry vars;
  RingPtr<F> ring;
  std::vector<Poly<F>> f;
  std::vector<int> v;
  bool params_in_ring = false;

  std::size_t n() const { return vars.n(); }
  std::size_t p() const { return vars.p(); }
  int x_index(std::size_t i) const { return static_cast<int>(i); }
  int s_index(std::size_t j) const { return static_cast<int>(vars.n() + j); }

  /// Π f_j^{v_j}
  Poly<F> f_power_v() const {
    Poly<F> r = Poly<F>::one(ring);
    for (std::size_t j = 0; j < f.size(); ++j) r *= f[j].pow(static_cast<unsigned>(v[j]));
    return r;
  }

  /// Aₙ(R)[s] matching this instance (parameters central when kept as variables).
  WeylRing<F> weyl_ring() const {
    return make_weyl_ring(ring->field, vars.x, vars.s, false, params_in_ring ? vars.a : std::vector<std::string>{});
  }
};

using QInstance = ProblemInstance<RationalField>;

/// Ring names x, s, then the parameters (if kept as variables).
template <CoefficientField F>
RingPtr<F> instance_ring(const F& field, const VarRegistry& vars, bool with_params) {
  std::vector<std::string> names = vars.x;
  names.insert(names.end(), vars.s.begin(), vars.s.end());
  if (with_params) names.insert(names.end(), vars.a.begin(), vars.a.end());
  return make_ring(field, std::move(names));
}

template <CoefficientField F>
ProblemInstance<F> make_instance(const F& field, VarRegistry vars, const std::vector<Poly<F>>& f, std::vector<int> v,
                                 bool params_in_ring) {
  vars.validate();
  if (f.size() != vars.p()) fail(ErrorCode::InvalidInput, "number of polynomials must equal p");
  if (v.empty()) v.assign(f.size(), 1);
  if (v.size() != f.size()) fail(ErrorCode::InvalidInput, "|v| must equal p");
  for (int e : v)
    if (e < 0) fail(ErrorCode::InvalidInput, "v must be a vector of non-negative integers");
  ProblemInstance<F> inst{std::move(vars), nullptr, {}, std::move(v), params_in_ring};
  inst.ring = instance_ring(field, inst.vars, params_in_ring);
  for (const auto& fj : f) {
    auto g = fj.map_to(inst.ring);
    if (g.is_zero()) fail(ErrorCode::InvalidInput, "f_j must be non-zero");
    for (std::size_t j = 0; j < inst.p(); ++j)
      if (g.involves(inst.s_index(j))) fail(ErrorCode::InvalidInput, "f_j must not involve s");
    inst.f.push_back(std::move(g));
  }
  return inst;
}

/// The parameter ring ℚ[a₁..a_m] of an instance.
inline QRingPtr param_ring(const QInstance& inst) { return make_qring(inst.vars.a); }

/// Coefficients of a polynomial in ℚ[x, s, a] grouped by (x, s)-monomial,
/// each returned as an element of `params` = ℚ[a].
inline std::vector<std::pair<Monomial, QPoly>> coefficients_over_params(const QPoly& p, const QInstance& inst,
                                                                        const QRingPtr& params) {
  const std::size_t base = inst.n() + inst.p();
  std::vector<std::pair<Monomial, std::vector<QPoly::Term>>> buckets;
  for (const auto& t : p.terms()) {
    Monomial key(base), am(params->nvars());
    for (std::size_t i = 0; i < base; ++i) key[i] = t.mono[i];
    for (std::size_t k = 0; k < params->nvars(); ++k) am[k] = t.mono[base + k];
    auto it = std::find_if(buckets.begin(), buckets.end(), [&](const auto& b) { return b.first == key; });
    if (it == buckets.end()) {
      buckets.push_back({key, {}});
      it = std::prev(buckets.end());
    }
    it->second.push_back({std::move(am), t.coeff});
  }
  std::vector<std::pair<Monomial, QPoly>> out;
  for (auto& [k, ts] : buckets) out.emplace_back(k, QPoly::from_terms(params, std::move(ts)));
  return out;
}

/// Substitutes a rational parameter point, giving an instance over ℚ with m = 0.
inline QInstance specialize(const QInstance& inst, const std::vector<Rational>& point) {
  if (point.size() != inst.vars.m()) fail(ErrorCode::InvalidInput, "point dimension must equal the number of parameters");
  VarRegistry vars{inst.vars.x, inst.vars.s, {}};
  auto target = instance_ring(RationalField{}, vars, false);
  std::vector<std::pair<int, Rational>> vals;
  const int base = static_cast<int>(inst.n() + inst.p());
  for (std::size_t k = 0; k < point.size(); ++k) vals.emplace_back(base + static_cast<int>(k), point[k]);
  std::vector<QPoly> fs;
  for (const auto& fj : inst.f) {
    auto g = evaluate(fj, vals, target);
    if (g.is_zero()) fail(ErrorCode::FamilyVanishesModQ, "f_j vanishes identically at the point");
    fs.push_back(g);
  }
  return make_instance(RationalField{}, vars, fs, inst.v, false);
}

}  // namespace bsgen
