#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsgen/fs_oracle.hpp"
#include "bsgen/weyl_groebner.hpp"

namespace bsgen {

struct BsOptions {
  GroebnerBudget budget;
};

/// Auxiliary ring in x, t, u, ∂x, ∂t, y (plus central parameters) for the instance.
template <CoefficientField F>
WeylRing<F> malgrange_ring(const ProblemInstance<F>& inst) {
  return make_weyl_ring(inst.ring->field, inst.vars.x, inst.vars.s, true,
                        inst.params_in_ring ? inst.vars.a : std::vector<std::string>{});
}

/// {t_j − u_j f_j}, {∂x_i + Σ_j u_j ∂f_j/∂x_i ∂t_j}, {u_j y_j − 1}.
template <CoefficientField F>
LeftIdealW<F> malgrange_ideal(const ProblemInstance<F>& inst) {
  WeylRing<F> r = malgrange_ring(inst);
  const auto& L = r.layout;
  using P = Poly<F>;
  auto var = [&](int idx) { return P::variable(r.ring, idx); };
  std::vector<P> f;
  for (const auto& fj : inst.f) f.push_back(fj.map_to(r.ring));
  std::vector<WeylOp<F>> gens;
  for (std::size_t j = 0; j < inst.p(); ++j) gens.emplace_back(r, var(L.t[j]) - var(L.u[j]) * f[j]);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    P g = var(L.dx[i]);
    for (std::size_t j = 0; j < inst.p(); ++j) g += var(L.u[j]) * f[j].derivative(L.x[i]) * var(L.dt[j]);
    gens.emplace_back(r, g);
  }
  for (std::size_t j = 0; j < inst.p(); ++j) gens.emplace_back(r, var(L.u[j]) * var(L.y[j]) - P::one(r.ring));
  return LeftIdealW<F>{r, gens, std::nullopt, {}, {}};
}

namespace detail {

/// Rewrites a weight-zero operator of the auxiliary ring in Aₙ[s]:
/// t_j^a ∂t_j^a ↦ Π_{i<a} (−s_j − 1 − i).
template <CoefficientField F>
Poly<F> substitute_euler(const WeylOp<F>& g, const WeylRing<F>& target) {
  const auto& src = g.ring();
  const auto& SL = src.layout;
  const auto& TL = target.layout;
  const F& fld = target.ring->field;
  using P = Poly<F>;
  P out(target.ring);
  for (const auto& t : g.poly().terms()) {
    Monomial m(target.ring->nvars());
    for (std::size_t i = 0; i < SL.x.size(); ++i) {
      m[TL.x[i]] = t.mono[SL.x[i]];
      m[TL.dx[i]] = t.mono[SL.dx[i]];
    }
    for (std::size_t c = 0; c < SL.central.size(); ++c) m[TL.central[c]] = t.mono[SL.central[c]];
    P term = P::monomial(target.ring, m, t.coeff);
    for (std::size_t j = 0; j < SL.t.size(); ++j) {
      const int a = t.mono[SL.t[j]];
      if (a != t.mono[SL.dt[j]] || t.mono[SL.u[j]] != 0 || t.mono[SL.y[j]] != 0)
        fail(ErrorCode::HomogeneityViolation, "operator is not of weight zero in t_j");
      P sj = P::variable(target.ring, TL.s[j]);
      for (int i = 0; i < a; ++i) term *= (-sj - P::constant(target.ring, fld.from_rational(Rational(1 + i))));
    }
    out += term;
  }
  return out;
}

}  // namespace detail

/// Annihilator of f^s in Aₙ(R)[s], with its reduced left Gröbner basis (degrevlex).
template <CoefficientField F>
LeftIdealW<F> ann_fs(const ProblemInstance<F>& inst, const BsOptions& opt = {}) {
  LeftIdealW<F> I = malgrange_ideal(inst);
  const auto& L = I.ring.layout;
  std::vector<int> kill = L.u;
  kill.insert(kill.end(), L.y.begin(), L.y.end());
  GroebnerOptions<F> go;
  go.budget = opt.budget;
  go.homogeneity = malgrange_weights(I.ring);
  auto elim = left_buchberger(I.gens, TermOrder::block(kill, TermOrder::degrevlex()), go);
  auto kept = subring_elements(elim, kill);
  auto ws = malgrange_weights(elim.ring);
  auto zero = weight0_extract(lift_to_weight0(kept, ws), ws);

  WeylRing<F> target = inst.weyl_ring();
  std::vector<WeylOp<F>> gens;
  for (const auto& g : zero) {
    auto q = detail::substitute_euler(g, target);
    if (!q.is_zero()) gens.emplace_back(target, std::move(q));
  }
  if (gens.empty()) gens.emplace_back(target);
  GroebnerOptions<F> go2;
  go2.budget = opt.budget;
  auto out = left_buchberger(gens, TermOrder::degrevlex(), go2);
  out.stats.steps += elim.stats.steps;
  out.stats.pairs_reduced += elim.stats.pairs_reduced;
  out.stats.pairs_skipped += elim.stats.pairs_skipped;
  return out;
}

/// Generators of (Ann f^s + Aₙ(R)[s]·f^v) ∩ R[s] with a certificate operator P per
/// generator: b − P·f^v ∈ Ann f^s.
template <CoefficientField F>
struct BSIdeal {
  RingPtr<F> ring;  // R[s] (s names, then central names)
  std::vector<Poly<F>> generators;
  std::vector<WeylOp<F>> certificates;
  WeylRing<F> weyl;  // ring of the certificates
  std::size_t basis_size = 0;
  GroebnerStats stats;
};

template <CoefficientField F>
BSIdeal<F> bs_ideal_from_ann(const ProblemInstance<F>& inst, const LeftIdealW<F>& ann, const BsOptions& opt = {}) {
  WeylRing<F> r = inst.weyl_ring();
  std::vector<WeylOp<F>> gens;
  for (const auto& g : ann.gb()) gens.emplace_back(r, g.poly().with_ring(r.ring));
  gens.emplace_back(r, inst.f_power_v().map_to(r.ring));
  std::vector<int> kill = r.layout.x;
  kill.insert(kill.end(), r.layout.dx.begin(), r.layout.dx.end());
  GroebnerOptions<F> go;
  go.budget = opt.budget;
  go.tracked = {gens.size() - 1};
  auto I = left_buchberger(gens, TermOrder::block(kill, TermOrder::degrevlex()), go);

  std::vector<std::string> names;
  for (int j : r.layout.s) names.push_back(r.ring->names[j]);
  for (int c : r.layout.central) names.push_back(r.ring->names[c]);
  BSIdeal<F> out{make_ring(r.ring->field, names), {}, {}, r, I.gb().size(), I.stats};
  out.stats.steps += ann.stats.steps;
  const auto& basis = I.gb();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].poly().involves_any(kill)) continue;
    out.generators.push_back(basis[k].poly().map_to(out.ring));
    out.certificates.emplace_back(r, I.cofactors[k][0].poly().with_ring(r.ring));
  }
  return out;
}

template <CoefficientField F>
BSIdeal<F> bs_ideal(const ProblemInstance<F>& inst, const BsOptions& opt = {}) {
  return bs_ideal_from_ann(inst, ann_fs(inst, opt), opt);
}

/// Monic generator of the principal ideal B(f) ⊂ R[s] when p = 1.
template <CoefficientField F>
Poly<F> principal_generator(const BSIdeal<F>& B) {
  if (B.generators.empty()) fail(ErrorCode::InvalidInput, "Bernstein-Sato ideal has no generators");
  if (B.generators.size() != 1)
    fail(ErrorCode::InvalidInput, "expected a single univariate generator, got " + std::to_string(B.generators.size()));
  return B.generators[0].monic();
}

/// Bernstein polynomial of a single polynomial over ℚ, with its certificate.
struct BernsteinPolynomial {
  QPoly b;
  QWeylOp P;
  Factorization factored;
  bool verified = false;
};

inline BernsteinPolynomial bs_poly(const QInstance& inst, const BsOptions& opt = {}) {
  if (inst.p() != 1) fail(ErrorCode::InvalidInput, "bs_poly needs p = 1");
  auto B = bs_ideal(inst, opt);
  QPoly b = principal_generator(B);
  Rational lc = B.generators[0].lc();
  QWeylOp P = B.certificates[0].scale(Rational(1) / lc);
  bool ok = check_identity(b, P, inst);
  return {b, P, factor(b), ok};
}

/// Root of a linear factor s_j − r.
struct RootInfo {
  std::string variable;
  Rational value;
  int multiplicity = 1;
};

struct GeneratorReport {
  std::string generator;
  bool rational = false;
  std::vector<std::string> factors;  // with multiplicities, as "(g)^e"
  std::vector<RootInfo> roots;       // from the linear factors
  bool fully_split = false;          // every factor linear in one s_j
  bool all_negative_rational = false;
};

struct RationalityReport {
  std::vector<GeneratorReport> entries;
  bool some_rational = false;
};

/// Coefficients in ℚ, as a polynomial of a ℚ-ring with the same variable names.
template <CoefficientField F>
std::optional<QPoly> to_rational_poly(const Poly<F>& p, const QRingPtr& target) {
  std::vector<QPoly::Term> ts;
  for (const auto& t : p.terms()) {
    auto q = p.ring()->field.to_rational(t.coeff);
    if (!q) return std::nullopt;
    ts.push_back({t.mono, *q});
  }
  return QPoly::from_terms(target, std::move(ts));
}

inline GeneratorReport analyze_rational_generator(const QPoly& g) {
  GeneratorReport e;
  e.generator = g.to_string();
  e.rational = true;
  auto fac = factor(g);
  e.fully_split = fac.complete;
  e.all_negative_rational = true;
  for (const auto& [h, mult] : fac.factors) {
    e.factors.push_back("(" + h.to_string() + ")" + (mult > 1 ? "^" + std::to_string(mult) : ""));
    auto vs = detail::variables_of(h);
    if (h.total_degree() == 1 && vs.size() == 1) {
      // monic: s_j + c, root −c
      Rational root = -h.constant_coeff();
      e.roots.push_back({g.ring()->names[vs[0]], root, mult});
      if (root >= 0) e.all_negative_rational = false;
    } else {
      e.fully_split = false;
      e.all_negative_rational = false;
    }
  }
  return e;
}

template <CoefficientField F>
RationalityReport rationality_report(const BSIdeal<F>& B) {
  RationalityReport rep;
  auto qring = make_qring(B.ring->names);
  for (const auto& g : B.generators) {
    auto q = to_rational_poly(g, qring);
    if (!q) {
      GeneratorReport e;
      e.generator = g.to_string();
      rep.entries.push_back(std::move(e));
      continue;
    }
    rep.entries.push_back(analyze_rational_generator(*q));
    rep.some_rational = true;
  }
  return rep;
}

}  // namespace bsgen
