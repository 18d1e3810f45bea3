#pragma once

#include <string>
#include <vector>

#include "bsgen/annihilator.hpp"

namespace bsgen {

/// Generic data over a prime Q of ℚ[a]:
/// h·b(s)·f^s = U·f^{s+v} + remainder, remainder with coefficients in Q.
struct GenericBS {
  PrimeIdealQ Q;
  QPoly h;             // exact clearing factor, in ℚ[a]
  QPoly h_squarefree;  // defines the removed hypersurface V(h)
  QPoly b;             // in ℚ[s]
  QWeylOp U;           // over ℚ[a] (parameters central)
  FsElement remainder;
  std::string strategy;
  bool verified = false;
};

struct GenericOptions {
  BsOptions bs;
  int rationalize_degree = 8;
};

/// A rational element of a Bernstein-Sato ideal over a residue field, with the
/// certificate P (b − P·f^v ∈ Ann f^s).
struct RationalElement {
  QPoly b;
  WeylOp<ResidueField> P;
  std::string strategy;
};

namespace detail {

inline QRingPtr rational_s_ring(const BSIdeal<ResidueField>& B) { return make_qring(B.ring->names); }

/// Certificate of Σ_i q_i·g_i from the generators' certificates (s is central).
inline WeylOp<ResidueField> combine_certificates(const BSIdeal<ResidueField>& B,
                                                 const std::vector<Poly<ResidueField>>& q) {
  WeylOp<ResidueField> P(B.weyl);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].is_zero()) continue;
    P = P + WeylOp<ResidueField>(B.weyl, q[i].map_to(B.weyl.ring)) * B.certificates[i];
  }
  return P;
}

inline std::optional<RationalElement> rationalize_basis(const BSIdeal<ResidueField>& B) {
  auto qr = rational_s_ring(B);
  for (std::size_t i = 0; i < B.generators.size(); ++i) {
    auto q = to_rational_poly(B.generators[i], qr);
    if (q) return RationalElement{*q, B.certificates[i], "basis"};
  }
  return std::nullopt;
}

/// Π_j b_j with b_j the generator of B ∩ K[s_j], when every b_j is rational.
inline std::optional<RationalElement> rationalize_univariate(const BSIdeal<ResidueField>& B, const GroebnerBudget& budget) {
  const std::size_t ns = B.ring->nvars();
  if (ns < 2) return std::nullopt;
  auto qr = rational_s_ring(B);
  std::vector<QPoly> bj;
  std::vector<WeylOp<ResidueField>> Pj;
  for (std::size_t j = 0; j < ns; ++j) {
    std::vector<int> others;
    for (std::size_t k = 0; k < ns; ++k)
      if (k != j) others.push_back(static_cast<int>(k));
    auto ring = B.ring->with_order(TermOrder::block(others, TermOrder::degrevlex()));
    GroebnerOptions<ResidueField> go;
    go.budget = budget;
    for (std::size_t k = 0; k < B.generators.size(); ++k) go.tracked.push_back(k);
    std::vector<Poly<ResidueField>> gens;
    for (const auto& g : B.generators) gens.push_back(g.with_ring(ring));
    detail::BuchbergerEngine<ResidueField, CommutativeMult> engine(ring, CommutativeMult{}, true, go);
    auto res = engine.run(gens);
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < res.basis.size() && !hit; ++k)
      if (!res.basis[k].involves_any(others)) hit = k;
    if (!hit) return std::nullopt;
    auto q = to_rational_poly(res.basis[*hit].with_ring(B.ring), qr);
    if (!q) return std::nullopt;
    std::vector<Poly<ResidueField>> cof;
    for (const auto& c : res.cofactors[*hit]) cof.push_back(c.with_ring(B.ring));
    bj.push_back(*q);
    Pj.push_back(combine_certificates(B, cof));
  }
  QPoly b = QPoly::one(qr);
  for (const auto& x : bj) b *= x;
  // b = (Π_{j≥1} b_j)·b_0, certificate (Π_{j≥1} b_j)·P_0.
  QPoly rest = QPoly::one(qr);
  for (std::size_t j = 1; j < bj.size(); ++j) rest *= bj[j];
  const auto& K = B.ring->field;
  std::vector<Poly<ResidueField>::Term> ts;
  for (const auto& t : rest.terms()) ts.push_back({t.mono, K.from_rational(t.coeff)});
  auto restK = Poly<ResidueField>::from_terms(B.ring, std::move(ts));
  return RationalElement{b, WeylOp<ResidueField>(B.weyl, restK.map_to(B.weyl.ring)) * Pj[0], "univariate-product"};
}

/// ℚ-coordinates of a residue element over a fixed common denominator.
inline QPoly scaled_numerator(const ResidueField& K, const ResidueElem& e, const QPoly& common) {
  return K.prime().reduce(e.num() * exact_div(common, e.den()));
}

/// Smallest-degree b ∈ ℚ[s] ∩ B with deg b ≤ max_degree, by a ℚ-linear search on
/// normal forms: NF(b) = Σ c_m NF(m) must vanish coefficientwise in ℚ[a]/Q.
inline std::optional<RationalElement> rationalize_linear(const BSIdeal<ResidueField>& B, int max_degree) {
  if (B.generators.empty()) return std::nullopt;
  const auto& K = B.ring->field;
  const std::size_t ns = B.ring->nvars();
  auto qr = rational_s_ring(B);
  for (int D = 0; D <= max_degree; ++D) {
    auto exps = exponents_up_to(ns, D);
    std::vector<Division<ResidueField>> divs;
    std::vector<Monomial> monos;
    for (const auto& e : exps) {
      Monomial m(ns);
      for (std::size_t j = 0; j < ns; ++j) m[j] = e[j];
      monos.push_back(m);
      divs.push_back(divide(Poly<ResidueField>::monomial(B.ring, m, K.one()), B.generators));
    }
    // One common denominator for all remainders, then rows indexed by
    // (s-monomial, a-monomial) of the scaled numerators.
    QPoly common = QPoly::one(K.param_ring());
    for (const auto& d : divs)
      for (const auto& t : d.remainder.terms()) common = poly_lcm(common, t.coeff.den());
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> row_of;
    std::vector<SparseRow> rows;
    for (std::size_t c = 0; c < divs.size(); ++c)
      for (const auto& t : divs[c].remainder.terms()) {
        QPoly num = scaled_numerator(K, t.coeff, common);
        std::vector<int> sk(t.mono.size());
        for (std::size_t v = 0; v < sk.size(); ++v) sk[v] = t.mono[v];
        for (const auto& at : num.terms()) {
          std::vector<int> ak(at.mono.size());
          for (std::size_t v = 0; v < ak.size(); ++v) ak[v] = at.mono[v];
          auto [it, fresh] = row_of.try_emplace({sk, ak}, rows.size());
          if (fresh) rows.emplace_back();
          rows[it->second][c] += at.coeff;
        }
      }
    for (auto& r : rows)
      for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    auto kernel = nullspace(rows, divs.size());
    if (kernel.empty()) continue;
    const auto& v = kernel.front();
    QPoly b(qr);
    std::vector<Poly<ResidueField>> q(B.generators.size(), Poly<ResidueField>(B.ring));
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] == 0) continue;
      b += QPoly::monomial(qr, monos[c], v[c]);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += divs[c].quotients[i].scale(K.from_rational(v[c]));
    }
    Rational lc = b.lc();
    auto P = combine_certificates(B, q).scale(K.from_rational(Rational(1) / lc));
    return RationalElement{b.scale(Rational(1) / lc), P, "linear-search"};
  }
  return std::nullopt;
}

}  // namespace detail

/// A nonzero element of B with rational coefficients (basis element, product of
/// univariate eliminants, or bounded ℚ-linear search), with its certificate.
inline RationalElement rationalize(const BSIdeal<ResidueField>& B, int max_degree = 8, const GroebnerBudget& budget = {}) {
  if (B.generators.empty()) fail(ErrorCode::NonRationalCertificate, "the Bernstein-Sato ideal is zero");
  if (auto r = detail::rationalize_basis(B)) return *r;
  if (auto r = detail::rationalize_univariate(B, budget)) return *r;
  if (auto r = detail::rationalize_linear(B, max_degree)) return *r;
  fail(ErrorCode::NonRationalCertificate,
       "no rational element found up to degree " + std::to_string(max_degree));
}

/// The instance over Frac(ℚ[a]/Q); polynomials in K[x, s].
inline ProblemInstance<ResidueField> residue_instance(const QInstance& inst, const ResidueField& K) {
  auto pr = K.param_ring();
  VarRegistry vars{inst.vars.x, inst.vars.s, {}};
  auto ring = instance_ring(K, vars, false);
  std::vector<Poly<ResidueField>> fs;
  for (const auto& fj : inst.f) {
    std::vector<Poly<ResidueField>::Term> ts;
    for (const auto& [mono, c] : coefficients_over_params(fj, inst, pr)) {
      auto e = K.from_poly(c);
      if (!K.is_zero(e)) ts.push_back({mono, e});
    }
    fs.push_back(Poly<ResidueField>::from_terms(ring, std::move(ts)));
  }
  ProblemInstance<ResidueField> out{vars, ring, std::move(fs), inst.v, false};
  return out;
}

/// Parameters as polynomial variables: ring ℚ[x, s, a].
inline QInstance with_params_in_ring(const QInstance& inst) {
  if (inst.params_in_ring) return inst;
  return make_instance(RationalField{}, inst.vars, inst.f, inst.v, true);
}

/// Fails with FamilyVanishesModQ when some f_j has all coefficients in Q.
inline void require_nonvanishing(const QInstance& inst, const PrimeIdealQ& Q) {
  for (std::size_t j = 0; j < inst.p(); ++j) {
    bool nonzero = false;
    for (const auto& [mono, c] : coefficients_over_params(inst.f[j], inst, Q.ring()))
      if (!Q.contains(c)) {
        nonzero = true;
        break;
      }
    if (!nonzero)
      fail(ErrorCode::FamilyVanishesModQ, "f" + std::to_string(j + 1) + " lies in Q[x] for Q = " + Q.to_string());
  }
}

inline GenericBS generic_bs(const QInstance& inst_in, const PrimeIdealQ& Q, const GenericOptions& opt = {}) {
  QInstance inst = with_params_in_ring(inst_in);
  require_nonvanishing(inst, Q);
  ResidueField K(Q);
  auto kinst = residue_instance(inst, K);
  auto B = bs_ideal(kinst, opt.bs);
  auto re = rationalize(B, opt.rationalize_degree, opt.bs.budget);
  auto cleared = op_scale_clear(re.P);
  GenericBS g;
  g.Q = Q;
  g.h = cleared.h;
  g.h_squarefree = cleared.h.is_constant() ? QPoly::one(cleared.h.ring()) : squarefree_part(cleared.h);
  g.b = re.b;
  g.U = cleared.op;
  g.strategy = re.strategy;
  g.remainder = congruence_remainder(g.h, g.b, g.U, inst);
  g.verified = remainder_in_prime(g.remainder, Q) && !Q.contains(g.h);
  if (!g.verified) fail(ErrorCode::NonRationalCertificate, "congruence check failed for the generic certificate");
  return g;
}

inline bool check_congruence(const GenericBS& g, const QInstance& inst) {
  return check_congruence(g.h, g.b, g.U, g.Q, with_params_in_ring(inst));
}

/// Substitutes a parameter point into an operator over ℚ[a], giving an operator of `target`.
inline QWeylOp specialize_op(const QWeylOp& U, const std::vector<std::string>& params, const std::vector<Rational>& point,
                             const QWeylRing& target) {
  std::vector<std::pair<int, Rational>> vals;
  for (std::size_t k = 0; k < params.size(); ++k)
    if (auto idx = U.ring().ring->index_of(params[k])) vals.emplace_back(*idx, point[k]);
  return QWeylOp(target, evaluate(U.poly(), vals, target.ring));
}

inline QPoly evaluate_params(const QPoly& h, const std::vector<Rational>& point) {
  std::vector<std::pair<int, Rational>> vals;
  for (std::size_t k = 0; k < point.size(); ++k) vals.emplace_back(static_cast<int>(k), point[k]);
  return evaluate(h, vals, make_qring({}));
}

/// Whether h(a₀)·b·f(a₀)^s = U(a₀)·f(a₀)^{s+v} holds, i.e. b ∈ B^v(f(a₀, x)).
inline bool specialize_check(const GenericBS& g, const QInstance& inst, const std::vector<Rational>& point) {
  if (point.size() != inst.vars.m()) fail(ErrorCode::PointOutsideStratum, "point has the wrong dimension");
  for (const auto& q : g.Q.ideal.gb())
    if (!evaluate_params(q, point).is_zero()) fail(ErrorCode::PointOutsideStratum, "point is not on V(Q)");
  QPoly h0 = evaluate_params(g.h.map_to(g.Q.ring()), point);
  if (h0.is_zero()) fail(ErrorCode::PointOutsideStratum, "h vanishes at the point");
  QInstance spec = specialize(inst, point);
  QWeylOp U0 = specialize_op(g.U, inst.vars.a, point, spec.weyl_ring());
  QPoly lhs = g.b.map_to(spec.ring).scale(h0.constant_coeff());
  return check_identity(lhs, U0, spec);
}

}  // namespace bsgen
