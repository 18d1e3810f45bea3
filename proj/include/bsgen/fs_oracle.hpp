#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bsgen/instance.hpp"
#include "bsgen/linalg.hpp"

namespace bsgen {

/// numerator / Π f_j^{k_j} · f^s, an element of ℚ[a][x, 1/(f₁…f_p), s]·f^s.
struct FsElement {
  std::shared_ptr<const QInstance> inst;
  QPoly num;
  std::vector<int> k;

  bool is_zero() const { return num.is_zero(); }
  std::string to_string() const {
    std::string d;
    for (std::size_t j = 0; j < k.size(); ++j)
      if (k[j] > 0) d += (d.empty() ? "" : "*") + std::string("f") + std::to_string(j + 1) + "^" + std::to_string(k[j]);
    return "(" + num.to_string() + ")" + (d.empty() ? "" : "/(" + d + ")") + "*f^s";
  }
};

namespace detail {

inline std::shared_ptr<const QInstance> share(const QInstance& inst) { return std::make_shared<const QInstance>(inst); }

/// Cancels f_j from the numerator while k_j > 0 and the division is exact.
inline void fs_reduce(FsElement& e) {
  if (e.num.is_zero()) {
    std::fill(e.k.begin(), e.k.end(), 0);
    return;
  }
  for (std::size_t j = 0; j < e.k.size(); ++j)
    while (e.k[j] > 0) {
      auto q = exact_quotient(e.num, e.inst->f[j]);
      if (!q) break;
      e.num = std::move(*q);
      --e.k[j];
    }
}

/// Rewrites e over the denominator Π f_j^{target_j} (target ≥ e.k).
inline QPoly fs_numerator_over(const FsElement& e, const std::vector<int>& target) {
  QPoly n = e.num;
  for (std::size_t j = 0; j < target.size(); ++j)
    if (target[j] > e.k[j]) n *= e.inst->f[j].pow(static_cast<unsigned>(target[j] - e.k[j]));
  return n;
}

}  // namespace detail

/// f^{s+w}; negative shifts go to the denominator.
inline FsElement fs_power(const QInstance& inst, const std::vector<int>& w) {
  if (w.size() != inst.p()) fail(ErrorCode::InvalidInput, "shift vector must have length p");
  auto sp = detail::share(inst);
  QPoly num = QPoly::one(sp->ring);
  std::vector<int> k(sp->p(), 0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] >= 0)
      num *= sp->f[j].pow(static_cast<unsigned>(w[j]));
    else
      k[j] = -w[j];
  }
  return FsElement{sp, num, std::move(k)};
}

inline FsElement fs_one(const QInstance& inst) { return fs_power(inst, std::vector<int>(inst.p(), 0)); }
inline FsElement fs_shifted(const QInstance& inst) { return fs_power(inst, inst.v); }

inline FsElement fs_make(const FsElement& like, QPoly num, std::vector<int> k) {
  FsElement e{like.inst, std::move(num), std::move(k)};
  detail::fs_reduce(e);
  return e;
}

inline FsElement operator+(const FsElement& a, const FsElement& b) {
  std::vector<int> k(a.k.size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = std::max(a.k[j], b.k[j]);
  return fs_make(a, detail::fs_numerator_over(a, k) + detail::fs_numerator_over(b, k), k);
}

inline FsElement operator-(const FsElement& a, const FsElement& b) {
  std::vector<int> k(a.k.size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = std::max(a.k[j], b.k[j]);
  return fs_make(a, detail::fs_numerator_over(a, k) - detail::fs_numerator_over(b, k), k);
}

/// Multiplication by a polynomial of ℚ[a][x, s].
inline FsElement fs_scale(const FsElement& e, const QPoly& c) { return fs_make(e, e.num * c.map_to(e.inst->ring), e.k); }

/// ∂_i(g/Πf^k · f^s) with J = {j : ∂_i f_j ≠ 0}:
/// numerator ∂_i g·Π_J f_j + g·Σ_J (s_j − k_j)·∂_i f_j·Π_{J∖j} f_l, and k + 1_J.
inline FsElement fs_derive(const FsElement& e, std::size_t i) {
  const auto& inst = *e.inst;
  const int xi = inst.x_index(i);
  std::vector<std::size_t> J;
  std::vector<QPoly> df;
  for (std::size_t j = 0; j < inst.p(); ++j) {
    QPoly d = inst.f[j].derivative(xi);
    if (!d.is_zero()) {
      J.push_back(j);
      df.push_back(std::move(d));
    }
  }
  QPoly prod = QPoly::one(inst.ring);
  for (auto j : J) prod *= inst.f[j];
  QPoly num = e.num.derivative(xi) * prod;
  for (std::size_t a = 0; a < J.size(); ++a) {
    QPoly others = QPoly::one(inst.ring);
    for (std::size_t b = 0; b < J.size(); ++b)
      if (b != a) others *= inst.f[J[b]];
    QPoly coef = QPoly::variable(inst.ring, inst.s_index(J[a])) - QPoly::rational(inst.ring, Rational(e.k[J[a]]));
    num += e.num * coef * df[a] * others;
  }
  auto k = e.k;
  for (auto j : J) ++k[j];
  return fs_make(e, std::move(num), std::move(k));
}

namespace detail {

/// How each variable of an operator ring acts on the module: a derivation ∂_i
/// (role = i) or multiplication by an instance variable (target index).
struct OpVarMap {
  std::vector<int> derivation;  // x-position i, or -1
  std::vector<int> target;      // index in the instance ring, or -1
};

inline OpVarMap map_operator_ring(const QWeylRing& r, const QInstance& inst) {
  if (r.has_aux()) fail(ErrorCode::RingMismatch, "operators with t/u/y variables do not act on f^s");
  OpVarMap m{std::vector<int>(r.ring->nvars(), -1), std::vector<int>(r.ring->nvars(), -1)};
  for (std::size_t i = 0; i < r.layout.dx.size(); ++i) {
    const auto& xname = r.ring->names[r.layout.x[i]];
    auto pos = std::find(inst.vars.x.begin(), inst.vars.x.end(), xname);
    if (pos == inst.vars.x.end()) fail(ErrorCode::RingMismatch, "operator variable " + xname + " is not an x of the instance");
    m.derivation[r.layout.dx[i]] = static_cast<int>(pos - inst.vars.x.begin());
  }
  for (std::size_t v = 0; v < r.ring->nvars(); ++v) {
    if (m.derivation[v] >= 0) continue;
    auto idx = inst.ring->index_of(r.ring->names[v]);
    if (!idx) fail(ErrorCode::RingMismatch, "operator variable " + r.ring->names[v] + " is unknown to the instance");
    m.target[v] = *idx;
  }
  return m;
}

}  // namespace detail

/// The action of a differential operator (normal order: multiplications left
/// of derivations) on an element of the module.
inline FsElement act(const QWeylOp& A, const FsElement& e) {
  const auto& inst = *e.inst;
  auto vm = detail::map_operator_ring(A.ring(), inst);
  const std::size_t n = inst.n();
  std::map<std::vector<int>, FsElement> memo;
  memo.emplace(std::vector<int>(n, 0), e);
  std::function<const FsElement&(const std::vector<int>&)> derived = [&](const std::vector<int>& beta) -> const FsElement& {
    auto it = memo.find(beta);
    if (it != memo.end()) return it->second;
    std::size_t i = 0;
    while (beta[i] == 0) ++i;
    auto lower = beta;
    --lower[i];
    FsElement d = fs_derive(derived(lower), i);
    return memo.emplace(beta, std::move(d)).first->second;
  };
  // Group terms by derivative part and bring everything over one denominator.
  std::map<std::vector<int>, QPoly> mult_by_beta;
  for (const auto& t : A.poly().terms()) {
    std::vector<int> beta(n, 0);
    Monomial m(inst.ring->nvars());
    for (std::size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      if (vm.derivation[v] >= 0)
        beta[vm.derivation[v]] += t.mono[v];
      else
        m[vm.target[v]] += t.mono[v];
    }
    auto [it, fresh] = mult_by_beta.try_emplace(beta, QPoly(inst.ring));
    it->second += QPoly::monomial(inst.ring, std::move(m), t.coeff);
  }
  std::vector<int> K(inst.p(), 0);
  for (const auto& [beta, c] : mult_by_beta) {
    const FsElement& d = derived(beta);
    for (std::size_t j = 0; j < K.size(); ++j) K[j] = std::max(K[j], d.k[j]);
  }
  QPoly num(inst.ring);
  for (const auto& [beta, c] : mult_by_beta) num += c * detail::fs_numerator_over(derived(beta), K);
  return fs_make(e, std::move(num), std::move(K));
}

/// act(P, f^{s+v}) − b·f^s == 0.
inline bool check_identity(const QPoly& b, const QWeylOp& P, const QInstance& inst) {
  FsElement lhs = act(P, fs_shifted(inst));
  FsElement rhs = fs_scale(fs_one(inst), b.map_to(inst.ring));
  return (lhs - rhs).is_zero();
}

/// r = h·b·f^s − act(U, f^{s+v}); instance polynomials over ℚ[x, s, a].
inline FsElement congruence_remainder(const QPoly& h, const QPoly& b, const QWeylOp& U, const QInstance& inst) {
  QPoly hb = h.map_to(inst.ring) * b.map_to(inst.ring);
  return fs_scale(fs_one(inst), hb) - act(U, fs_shifted(inst));
}

/// Whether every ℚ[a]-coefficient of the remainder's numerator lies in Q.
inline bool remainder_in_prime(const FsElement& r, const PrimeIdealQ& Q) {
  for (const auto& [mono, c] : coefficients_over_params(r.num, *r.inst, Q.ring()))
    if (!Q.contains(c)) return false;
  return true;
}

inline bool check_congruence(const QPoly& h, const QPoly& b, const QWeylOp& U, const PrimeIdealQ& Q,
                             const QInstance& inst) {
  return remainder_in_prime(congruence_remainder(h, b, U, inst), Q);
}

struct AnsatzBounds {
  int x_degree = 0;  // of the coefficients of P
  int d_order = 1;   // of P
  int s_degree = 1;  // of b (and of the s-coefficients of P)
};

struct AnsatzSolution {
  QPoly b;
  QWeylOp P;
};

/// Brute-force search for (b, P) with act(P, f^{s+v}) = b·f^s inside the given
/// bounds, by linear algebra over ℚ. Returns one solution per attainable
/// leading monomial of b, smallest first, with b monic.
inline std::vector<AnsatzSolution> ansatz_bs(const QInstance& inst, const AnsatzBounds& bounds) {
  if (bounds.x_degree < 0 || bounds.d_order < 0 || bounds.s_degree < 0)
    fail(ErrorCode::InvalidInput, "ansatz bounds must be non-negative");
  if (inst.params_in_ring && inst.vars.m() > 0) fail(ErrorCode::InvalidInput, "ansatz_bs needs an instance over ℚ");
  const std::size_t n = inst.n(), p = inst.p();
  QWeylRing wr = inst.weyl_ring();
  const auto xs = exponents_up_to(n, bounds.x_degree);
  const auto ds = exponents_up_to(n, bounds.d_order);
  const auto ss = exponents_up_to(p, bounds.s_degree);

  // Unknowns: b-coefficients (one per s-monomial), then P-coefficients.
  std::vector<QWeylOp> pbasis;
  for (const auto& d : ds)
    for (const auto& x : xs)
      for (const auto& s : ss) {
        Monomial m(wr.ring->nvars());
        for (std::size_t i = 0; i < n; ++i) {
          m[wr.layout.x[i]] = x[i];
          m[wr.layout.dx[i]] = d[i];
        }
        for (std::size_t j = 0; j < p; ++j) m[wr.layout.s[j]] = s[j];
        pbasis.emplace_back(wr, QPoly::monomial(wr.ring, m, Rational(1)));
      }
  std::vector<QPoly> bbasis;
  for (const auto& s : ss) {
    Monomial m(inst.ring->nvars());
    for (std::size_t j = 0; j < p; ++j) m[inst.s_index(j)] = s[j];
    bbasis.push_back(QPoly::monomial(inst.ring, m, Rational(1)));
  }

  // Images under the identity, over a common denominator.
  FsElement base = fs_shifted(inst);
  std::vector<FsElement> images;
  for (const auto& op : pbasis) images.push_back(act(op, base));
  std::vector<int> K(p, 0);
  for (const auto& im : images)
    for (std::size_t j = 0; j < p; ++j) K[j] = std::max(K[j], im.k[j]);
  FsElement one = fs_one(inst);

  std::map<std::vector<int>, std::size_t> row_of;
  std::vector<SparseRow> rows;
  auto add_column = [&](std::size_t col, const QPoly& numer, const Rational& sign) {
    for (const auto& t : numer.terms()) {
      std::vector<int> key(t.mono.size());
      for (std::size_t v = 0; v < key.size(); ++v) key[v] = t.mono[v];
      auto [it, fresh] = row_of.try_emplace(key, rows.size());
      if (fresh) rows.emplace_back();
      rows[it->second][col] += sign * t.coeff;
    }
  };
  const std::size_t nb = bbasis.size();
  // Column layout: b columns first, highest s-degree first; then P columns.
  for (std::size_t c = 0; c < nb; ++c) {
    const QPoly& bm = bbasis[nb - 1 - c];
    add_column(c, detail::fs_numerator_over(FsElement{one.inst, bm, one.k}, K), Rational(-1));
  }
  for (std::size_t c = 0; c < images.size(); ++c)
    add_column(nb + c, detail::fs_numerator_over(images[c], K), Rational(1));
  for (auto& r : rows)
    for (auto it = r.begin(); it != r.end();)
      it = it->second == 0 ? r.erase(it) : std::next(it);

  auto kernel = nullspace(rows, nb + images.size());
  std::vector<SparseRow> sol;
  for (const auto& v : kernel) {
    SparseRow r;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) r[c] = v[c];
    sol.push_back(std::move(r));
  }
  auto piv = rref(sol);
  std::vector<AnsatzSolution> out;
  for (std::size_t k = sol.size(); k-- > 0;) {
    if (piv[k] >= nb) continue;
    QPoly b(inst.ring);
    QPoly P(wr.ring);
    for (const auto& [c, val] : sol[k]) {
      if (c < nb)
        b += bbasis[nb - 1 - c].scale(val);
      else
        P += pbasis[c - nb].poly().scale(val);
    }
    Rational lc = b.lc();
    out.push_back({b.scale(Rational(1) / lc), QWeylOp(wr, P.scale(Rational(1) / lc))});
  }
  if (out.empty()) fail(ErrorCode::EmptyAnsatz, "no Bernstein-Sato identity within the given bounds");
  return out;
}

}  // namespace bsgen
