#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bsgen/generic.hpp"
#include "bsgen/primes.hpp"

namespace bsgen {

using ParamPoint = std::vector<Rational>;

/// V(closed) ∖ ∪ V(removed_i).
struct LocallyClosedSet {
  IdealC closed;
  std::vector<QPoly> removed;

  bool contains(const ParamPoint& a) const {
    for (const auto& g : closed.gb())
      if (!evaluate_params(g, a).is_zero()) return false;
    for (const auto& h : removed)
      if (evaluate_params(h, a).is_zero()) return false;
    return true;
  }

  /// Product of the removed polynomials (1 when nothing is removed).
  QPoly removed_product() const {
    QPoly r = QPoly::one(closed.ring);
    for (const auto& h : removed) r *= h.map_to(closed.ring);
    return r;
  }

  std::string to_string() const {
    std::string s = "V(";
    const auto& g = closed.gb();
    if (g.empty()) s += "0";
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].to_string();
    s += ")";
    for (const auto& h : removed) s += " \\ V(" + h.to_string() + ")";
    return s;
  }
};

/// The deterministic rational grid 0, 1, −1, 2, −2, 1/2, −1/2, 3, …
inline std::vector<Rational> rational_grid(std::size_t count) {
  std::vector<Rational> out{Rational(0)};
  for (long h = 1; out.size() < count; ++h) {
    std::vector<Rational> layer;
    for (long q = 1; q <= h; ++q)
      for (long p = 0; p <= h; ++p) {
        if (std::max(p, q) != h || std::gcd(p, q) != 1 || p == 0) continue;
        layer.push_back(Rational(p, q));
      }
    std::sort(layer.begin(), layer.end(), [](const Rational& a, const Rational& b) {
      if (a.get_den() != b.get_den()) return a.get_den() < b.get_den();
      return a < b;
    });
    for (auto& r : layer) {
      r.canonicalize();
      out.push_back(r);
      out.push_back(-r);
    }
  }
  out.resize(count);
  return out;
}

/// Up to `count` distinct rational points of the region: back-substitution
/// through a lex basis, rational roots for constrained coordinates and the grid
/// for free ones. An empty result after `trials` leaves is not a proof of emptiness.
inline std::vector<ParamPoint> sample_points(const LocallyClosedSet& region, std::size_t count, std::size_t trials = 400) {
  std::vector<ParamPoint> out;
  const std::size_t m = region.closed.ring->nvars();
  if (region.closed.is_unit()) return out;
  if (m == 0) {
    if (region.contains({})) out.push_back({});
    return out;
  }
  auto lexI = buchberger(region.closed.gb().empty() ? std::vector<QPoly>{QPoly(region.closed.ring)} : region.closed.gb(),
                         TermOrder::lex());
  std::vector<std::vector<QPoly>> level(m);
  for (const auto& g : lexI.gb()) {
    auto vs = detail::variables_of(g);
    if (!vs.empty()) level[vs.front()].push_back(g);
  }
  const std::size_t width = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(std::pow(double(trials), 1.0 / m))));
  const auto grid = rational_grid(width);
  auto ring1 = lexI.ring;
  ParamPoint cur(m);
  std::size_t leaves = 0;
  std::function<void(int)> rec = [&](int k) {
    if (out.size() >= count || leaves >= trials) return;
    if (k < 0) {
      ++leaves;
      if (region.contains(cur)) out.push_back(cur);
      return;
    }
    std::vector<std::pair<int, Rational>> vals;
    for (std::size_t i = k + 1; i < m; ++i) vals.emplace_back(static_cast<int>(i), cur[i]);
    QPoly g(ring1);
    for (const auto& e : level[k]) {
      QPoly u = evaluate(e, vals, ring1);
      g = g.is_zero() ? u : poly_gcd(g, u);
    }
    std::vector<Rational> cand;
    if (g.is_zero())
      cand = grid;
    else if (!g.is_constant())
      cand = detail::rational_roots(g, k);
    for (const auto& c : cand) {
      cur[k] = c;
      rec(k - 1);
      if (out.size() >= count || leaves >= trials) return;
    }
  };
  rec(static_cast<int>(m) - 1);
  return out;
}

inline std::optional<ParamPoint> sample_point(const LocallyClosedSet& region, std::size_t trials = 400) {
  auto pts = sample_points(region, 1, trials);
  if (pts.empty()) return std::nullopt;
  return pts.front();
}

/// A ∩ B = ∅, certified by h_A·h_B ∈ √(I_A + I_B).
inline bool certified_disjoint(const LocallyClosedSet& A, const LocallyClosedSet& B, const GroebnerBudget& budget = {}) {
  std::vector<QPoly> gens = A.closed.gb();
  for (const auto& g : B.closed.gb()) gens.push_back(g.map_to(A.closed.ring));
  auto sum = make_ideal(A.closed.ring, gens, budget);
  return radical_member(sum, A.removed_product() * B.removed_product(), budget);
}

/// Certified empty: the removed product lies in √closed.
inline bool certified_empty(const LocallyClosedSet& A, const GroebnerBudget& budget = {}) {
  return A.closed.is_unit() || radical_member(A.closed, A.removed_product(), budget);
}

/// A ⊆ E, certified by I_E ⊆ √I_A and h_A ∈ √(I_A + ⟨h_E⟩).
inline bool certified_covered(const LocallyClosedSet& A, const LocallyClosedSet& E, const GroebnerBudget& budget = {}) {
  for (const auto& g : E.closed.gb())
    if (!radical_member(A.closed, g.map_to(A.closed.ring), budget)) return false;
  std::vector<QPoly> gens = A.closed.gb();
  gens.push_back(E.removed_product().map_to(A.closed.ring));
  return radical_member(make_ideal(A.closed.ring, gens, budget), A.removed_product(), budget);
}

enum class Emptiness { NonEmpty, Empty, Unknown };

inline std::string to_string(Emptiness e) {
  switch (e) {
    case Emptiness::NonEmpty: return "nonempty";
    case Emptiness::Empty: return "empty";
    case Emptiness::Unknown: return "unknown";
  }
  return "unknown";
}

/// One piece of the recursion: V(Q) ∖ V(h) with its b, or a degenerate locus
/// (some f_j ≡ 0 mod Q) without one.
struct Piece {
  LocallyClosedSet region;
  std::optional<QPoly> b;
  std::optional<GenericBS> witness;
};

/// (∪ pieces) ∖ (∪ excluded), carrying one b (none for a degenerate stratum).
struct Stratum {
  std::vector<LocallyClosedSet> pieces;
  std::vector<LocallyClosedSet> excluded;
  std::optional<QPoly> b;
  std::vector<GenericBS> witnesses;  // parallel to pieces when b is set
  Emptiness emptiness = Emptiness::Unknown;
  std::optional<ParamPoint> sample;

  bool degenerate() const { return !b.has_value(); }

  /// Index of the piece containing the point, if the point lies in the stratum.
  std::optional<std::size_t> piece_of(const ParamPoint& a) const {
    for (const auto& e : excluded)
      if (e.contains(a)) return std::nullopt;
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (pieces[i].contains(a)) return i;
    return std::nullopt;
  }
  bool contains(const ParamPoint& a) const { return piece_of(a).has_value(); }

  /// The region as a single locally closed set, when it is one.
  std::optional<LocallyClosedSet> as_locally_closed() const {
    if (pieces.size() == 1 && excluded.empty()) return pieces.front();
    return std::nullopt;
  }

  std::string region_string() const {
    std::string s;
    for (std::size_t i = 0; i < pieces.size(); ++i) s += (i ? " ∪ " : "") + std::string("[") + pieces[i].to_string() + "]";
    for (const auto& e : excluded) s += " minus [" + e.to_string() + "]";
    return s;
  }
};

struct Stratification {
  IdealC ambient;
  std::vector<Stratum> strata;
  std::vector<Piece> pieces;  // raw recursion output, in order
  int depth = 0;

  std::vector<std::size_t> locate(const ParamPoint& a) const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < strata.size(); ++i)
      if (strata[i].contains(a)) r.push_back(i);
    return r;
  }
};

/// Groups pieces by b in order of first appearance; W_i = ∪E_i ∖ (∪E_1 … ∪E_{i−1}).
/// Exclusions certified disjoint from W_i are dropped, and strata certified empty
/// are removed. Degenerate pieces form their own group.
inline std::vector<Stratum> refine_partition(const std::vector<Piece>& pieces, const GroebnerBudget& budget = {},
                                             std::size_t trials = 400) {
  std::vector<std::string> keys;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string key = pieces[i].b ? pieces[i].b->to_string() : std::string("<degenerate>");
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      groups.push_back({i});
    } else {
      groups[it - keys.begin()].push_back(i);
    }
  }
  std::vector<Stratum> out;
  std::vector<std::size_t> earlier;
  for (const auto& grp : groups) {
    Stratum st;
    st.b = pieces[grp.front()].b;
    for (auto i : grp) {
      st.pieces.push_back(pieces[i].region);
      if (pieces[i].witness) st.witnesses.push_back(*pieces[i].witness);
    }
    for (auto e : earlier) {
      bool needed = false;
      for (auto i : grp)
        if (!certified_disjoint(pieces[i].region, pieces[e].region, budget)) needed = true;
      if (needed) st.excluded.push_back(pieces[e].region);
    }
    earlier.insert(earlier.end(), grp.begin(), grp.end());
    bool all_empty = true;
    for (const auto& pc : st.pieces) {
      if (certified_empty(pc, budget)) continue;
      if (std::any_of(st.excluded.begin(), st.excluded.end(),
                      [&](const LocallyClosedSet& e) { return certified_covered(pc, e, budget); }))
        continue;
      all_empty = false;
      for (const auto& pt : sample_points(pc, 16, trials))
        if (st.contains(pt)) {
          st.sample = pt;
          break;
        }
      if (st.sample) break;
    }
    if (st.sample)
      st.emptiness = Emptiness::NonEmpty;
    else if (all_empty)
      st.emptiness = Emptiness::Empty;
    if (st.emptiness == Emptiness::Empty) continue;
    out.push_back(std::move(st));
  }
  return out;
}

struct StratifyOptions {
  GenericOptions generic;
  std::size_t sample_trials = 400;
};

/// Recursive decomposition of V(Y): for each minimal prime Q of the current
/// ideal, the generic data (h, b) gives the piece V(Q) ∖ V(h); recurse on Q + ⟨h⟩.
inline Stratification stratify(const QInstance& inst_in, const IdealC& Y_in, const StratifyOptions& opt = {}) {
  QInstance inst = with_params_in_ring(inst_in);
  auto pr = param_ring(inst);
  const auto& budget = opt.generic.bs.budget;
  IdealC Y = make_ideal(pr, [&] {
    std::vector<QPoly> g;
    for (const auto& p : (Y_in.has_basis() ? Y_in.gb() : Y_in.gens)) g.push_back(p.map_to(pr));
    return g;
  }(), budget);
  if (Y.is_unit()) fail(ErrorCode::UnitIdeal, "the ambient ideal is the unit ideal");
  const int dimY = ideal_dim(Y);
  Stratification S{Y, {}, {}, 0};
  std::function<void(const IdealC&, int)> rec = [&](const IdealC& J, int depth) {
    if (depth > dimY + 1) fail(ErrorCode::DecompositionUnsupported, "recursion deeper than dim Y + 1");
    S.depth = std::max(S.depth, depth);
    for (const auto& Q : minimal_primes(J, budget)) {
      const int dQ = ideal_dim(Q.ideal);
      std::optional<GenericBS> g;
      try {
        g = generic_bs(inst, Q, opt.generic);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FamilyVanishesModQ) throw;
      }
      if (!g) {
        S.pieces.push_back({LocallyClosedSet{Q.ideal, {}}, std::nullopt, std::nullopt});
        continue;
      }
      LocallyClosedSet region{Q.ideal, {}};
      QPoly h = g->h_squarefree.map_to(pr);
      if (!h.is_constant()) region.removed.push_back(h);
      S.pieces.push_back({region, g->b, g});
      if (h.is_constant()) continue;
      IdealC next = detail::ideal_plus(Q.ideal, h, budget);
      if (next.is_unit()) continue;
      if (ideal_dim(next) >= dQ) fail(ErrorCode::DecompositionUnsupported, "dimension did not drop");
      rec(next, depth + 1);
    }
  };
  rec(Y, 1);
  S.strata = refine_partition(S.pieces, budget, opt.sample_trials);
  return S;
}

}  // namespace bsgen
