#pragma once

// Randomized property suites. Each returns a SuiteResult so the same code can
// back a GoogleTest case and a line of the acceptance report.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"

namespace bsgen::testing {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
  void record(bool passed, const std::string& what) {
    ++cases;
    if (passed) return;
    if (failures++ == 0) first_failure = what;
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, int(v.size()) - 1))]; }

  Monomial monomial(std::size_t n, int max_exp) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = uniform(0, max_exp);
    return m;
  }

  Rational coeff() {
    int num = 0;
    while (num == 0) num = uniform(-5, 5);
    return make_rational(num, uniform(1, 3));
  }

  /// Random polynomial with at most `terms` terms, exponents bounded per variable
  /// and total degree at most `deg`; `only` restricts the variables used.
  QPoly poly(const QRingPtr& ring, int terms, int deg, const std::vector<int>& only = {}) {
    std::vector<QPoly::Term> ts;
    const std::size_t n = ring->nvars();
    for (int k = 0; k < terms; ++k) {
      Monomial m(n);
      int budget = uniform(0, deg);
      while (budget-- > 0) {
        int v = only.empty() ? uniform(0, int(n) - 1) : pick(only);
        ++m[v];
      }
      ts.push_back({std::move(m), coeff()});
    }
    return QPoly::from_terms(ring, std::move(ts));
  }

 private:
  std::mt19937_64 gen_;
};

inline std::string show(const std::vector<QPoly>& ps) {
  std::string s = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].to_string();
  return s + "]";
}

/// Total, antisymmetric, transitive, multiplicative, with 1 minimal.
inline SuiteResult prop_term_orders(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"term-order axioms"};
  Rng rng(seed);
  const std::size_t n = 4;
  std::vector<TermOrder> orders = {TermOrder::lex(), TermOrder::degrevlex(),
                                   TermOrder::block({0, 2}, TermOrder::degrevlex()),
                                   TermOrder::block({3}, TermOrder::lex()),
                                   TermOrder::weighted({1, 0, 2, 1}, TermOrder::degrevlex())};
  for (std::size_t c = 0; c < cases; ++c) {
    const auto& o = orders[c % orders.size()];
    Monomial a = rng.monomial(n, 3), b = rng.monomial(n, 3), w = rng.monomial(n, 2), one(n);
    if (rng.coin(0.1)) b = a;
    int ab = o.compare(a, b), ba = o.compare(b, a);
    bool ok = ab == -ba && ((ab == 0) == (a == b));
    if (ab < 0) ok = ok && o.compare(a * w, b * w) < 0;
    if (ab > 0) ok = ok && o.compare(a * w, b * w) > 0;
    ok = ok && (a.is_one() ? o.compare(one, a) == 0 : o.compare(one, a) < 0);
    Monomial m3 = rng.monomial(n, 3);
    if (o.less(a, b) && o.less(b, m3)) ok = ok && o.less(a, m3);
    r.record(ok, o.describe());
  }
  return r;
}

/// Commutative case: recomputing from the reduced basis is the identity, every
/// S-polynomial reduces to zero and the inputs lie in the ideal.
inline SuiteResult prop_commutative_groebner(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"commutative Buchberger"};
  Rng rng(seed);
  auto ring = make_qring({"x", "y", "z"});
  std::vector<TermOrder> orders = {TermOrder::degrevlex(), TermOrder::lex(),
                                   TermOrder::block({0}, TermOrder::degrevlex())};
  for (std::size_t c = 0; c < cases; ++c) {
    auto R = ring->with_order(orders[c % orders.size()]);
    std::vector<QPoly> gens;
    int k = rng.uniform(2, 4);
    QPoly common = rng.coin(0.4) ? rng.poly(R, 2, 1) : QPoly::one(R);
    if (common.is_zero()) common = QPoly::one(R);
    for (int i = 0; i < k; ++i) gens.push_back(rng.poly(R, rng.uniform(1, 3), 3) * common);
    auto I = buchberger(gens);
    const auto& G = I.gb();
    bool ok = true;
    auto again = buchberger(G.empty() ? std::vector<QPoly>{QPoly(R)} : G);
    ok = ok && again.gb().size() == G.size();
    for (std::size_t i = 0; ok && i < G.size(); ++i) ok = again.gb()[i] == G[i];
    for (std::size_t i = 0; ok && i < G.size(); ++i)
      for (std::size_t j = i + 1; ok && j < G.size(); ++j) {
        Monomial l = lcm(G[i].lm(), G[j].lm());
        QPoly s = G[i].mul_term(Rational(1) / G[i].lc(), l / G[i].lm()) -
                  G[j].mul_term(Rational(1) / G[j].lc(), l / G[j].lm());
        ok = divide(s, G).remainder.is_zero();
      }
    for (const auto& g : gens) ok = ok && contains(I, g);
    r.record(ok, show(gens));
  }
  return r;
}

inline QWeylOp random_op(Rng& rng, const QWeylRing& W, int terms, int deg) {
  return QWeylOp(W, rng.poly(W.ring, terms, deg));
}

/// Left ideals of a Weyl algebra: idempotence and S-pairs reducing to zero.
inline SuiteResult prop_left_groebner(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"left Buchberger"};
  Rng rng(seed);
  std::vector<QWeylRing> rings = {make_weyl_ring(RationalField{}, {"x"}, {"s"}, false),
                                  make_weyl_ring(RationalField{}, {"x", "y"}, {"s"}, false)};
  // Runs stopped by the step budget are retried with fresh input, so `cases`
  // counts completed checks only.
  for (std::size_t c = 0; r.cases < cases && c < 4 * cases; ++c) {
    const auto& W0 = rings[c % 2 == 0 ? 0 : (rng.coin(0.5) ? 1 : 0)];
    auto W = W0.with_order(c % 3 == 0 ? TermOrder::lex() : TermOrder::degrevlex());
    std::vector<QWeylOp> gens;
    int k = rng.uniform(1, 3);
    QWeylOp right = rng.coin(0.5) ? random_op(rng, W, 2, 1) : QWeylOp::rational(W, Rational(1));
    if (right.is_zero()) right = QWeylOp::rational(W, Rational(1));
    for (int i = 0; i < k; ++i) {
      auto g = random_op(rng, W, rng.uniform(1, 3), 2) * right;
      gens.push_back(g.is_zero() ? right : g);
    }
    bool ok = true;
    std::string note;
    try {
      GroebnerOptions<RationalField> opts;
      opts.budget.max_steps = 20000;
      auto I = left_buchberger(gens, W.ring->order, opts);
      const auto& G = I.gb();
      auto again = left_buchberger(G, W.ring->order);
      ok = again.gb().size() == G.size();
      for (std::size_t i = 0; ok && i < G.size(); ++i) ok = again.gb()[i] == G[i];
      WeylMult mult;
      for (std::size_t i = 0; ok && i < G.size(); ++i)
        for (std::size_t j = i + 1; ok && j < G.size(); ++j) {
          const auto& gi = G[i].poly();
          const auto& gj = G[j].poly();
          Monomial l = lcm(gi.lm(), gj.lm());
          QPoly s = mult(Rational(1) / gi.lc(), l / gi.lm(), gi) - mult(Rational(1) / gj.lc(), l / gj.lm(), gj);
          ok = left_normal_form(QWeylOp(I.ring, s), I).is_zero();
        }
      for (const auto& g : gens) ok = ok && left_normal_form(g, I).is_zero();
    } catch (const Error& e) {
      // A budget stop is not a wrong answer; anything else is.
      if (e.code() != ErrorCode::TimeoutBudget) {
        ok = false;
        note = e.what();
      } else {
        continue;
      }
    }
    std::string desc;
    for (const auto& g : gens) desc += g.to_string() + "; ";
    r.record(ok, desc + note);
  }
  return r;
}

inline SuiteResult prop_weyl_associativity(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"Weyl product associativity"};
  Rng rng(seed);
  auto W = make_weyl_ring(RationalField{}, {"x", "y"}, {"s"}, false, {"a"});
  auto x = QWeylOp::x(W, 0), dx = QWeylOp::dx(W, 0);
  for (std::size_t c = 0; c < cases; ++c) {
    auto A = random_op(rng, W, 3, 3), B = random_op(rng, W, 3, 3), C = random_op(rng, W, 3, 3);
    bool ok = (A * B) * C == A * (B * C);
    ok = ok && A * (B + C) == A * B + A * C;
    // [∂x, x] = 1 survives multiplication on both sides.
    ok = ok && A * (dx * x - x * dx) * B == A * B;
    r.record(ok, A.to_string() + " | " + B.to_string() + " | " + C.to_string());
  }
  return r;
}

/// act(A·B, e) = act(A, act(B, e)) on random elements of the f^s module.
inline SuiteResult prop_act_products(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"act respects operator products"};
  Rng rng(seed);
  std::vector<QInstance> insts = {instance({"x", "y"}, {"x^2+y"}), instance({"x", "y"}, {"x*y+1"}),
                                  instance({"x", "y"}, {"x", "y"}), instance({"x", "y"}, {"x^2-y^3"})};
  for (std::size_t c = 0; c < cases; ++c) {
    const auto& inst = insts[c % insts.size()];
    auto W = inst.weyl_ring();
    auto A = random_op(rng, W, 2, 2), B = random_op(rng, W, 2, 2);
    std::vector<int> k(inst.p());
    for (auto& kj : k) kj = rng.uniform(-1, 1);
    FsElement e = fs_power(inst, k);
    e = fs_scale(e, rng.poly(inst.ring, 2, 2));
    bool ok = (act(A * B, e) - act(A, act(B, e))).is_zero();
    ok = ok && (act(A + B, e) - act(A, e) - act(B, e)).is_zero();
    r.record(ok, A.to_string() + " | " + B.to_string() + " on " + e.to_string());
  }
  return r;
}

/// Field axioms of Frac(ℚ[a]/Q) for a few primes Q.
inline SuiteResult prop_residue_field(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"residue-field axioms"};
  Rng rng(seed);
  auto ra = make_qring({"a"});
  auto rab = make_qring({"a", "b"});
  std::vector<ResidueField> fields = {
      ResidueField(zero_prime(ra)), ResidueField(make_prime(ra, {poly_in("a^2+1", ra)}, true)),
      ResidueField(make_prime(rab, {poly_in("a-b^2", rab)}, true)), ResidueField(zero_prime(rab)),
      ResidueField(make_prime(rab, {poly_in("a^2-2", rab)}, true))};
  for (std::size_t c = 0; c < cases; ++c) {
    const auto& K = fields[c % fields.size()];
    const auto& R = K.param_ring();
    auto elem = [&]() {
      while (true) {
        QPoly den = rng.coin(0.5) ? QPoly::one(R) : rng.poly(R, 2, 2);
        if (K.prime().contains(den)) continue;
        return K.from_fraction(rng.poly(R, 3, 2), den);
      }
    };
    auto x = elem(), y = elem(), z = elem();
    auto eq = [&](const ResidueElem& u, const ResidueElem& v) { return K.is_zero(K.sub(u, v)); };
    bool ok = eq(K.add(K.add(x, y), z), K.add(x, K.add(y, z)));
    ok = ok && eq(K.mul(K.mul(x, y), z), K.mul(x, K.mul(y, z)));
    ok = ok && eq(K.add(x, y), K.add(y, x)) && eq(K.mul(x, y), K.mul(y, x));
    ok = ok && eq(K.mul(x, K.add(y, z)), K.add(K.mul(x, y), K.mul(x, z)));
    ok = ok && eq(K.add(x, K.zero()), x) && eq(K.mul(x, K.one()), x);
    ok = ok && K.is_zero(K.add(x, K.neg(x)));
    if (!K.is_zero(x)) ok = ok && K.is_one(K.mul(x, K.inv(x)));
    r.record(ok, K.prime().to_string() + ": " + K.to_string(x) + ", " + K.to_string(y) + ", " + K.to_string(z));
  }
  return r;
}

/// Synthetic piece lists: the strata are pairwise disjoint, cover the union of
/// the pieces and give each point the label of the first piece containing it.
inline SuiteResult prop_refine_partition(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"refine_partition disjointness/coverage"};
  Rng rng(seed);
  auto R = make_qring({"a", "c"});
  auto P = [&](const std::string& t) { return poly_in(t, R); };
  std::vector<std::vector<std::string>> closed = {{}, {"a"}, {"c"}, {"a-c"}, {"a", "c"}, {"a^2-c"}, {"a-1"}, {"c+1", "a"}};
  std::vector<std::vector<std::string>> removed = {{}, {}, {"a"}, {"c"}, {"a+c"}, {"a*c-1"}, {"a-1"}, {"a", "c-2"}};
  auto s_ring = make_qring({"s"});
  std::vector<std::optional<QPoly>> labels = {poly_in("s+1", s_ring), poly_in("(s+1)^2", s_ring),
                                              poly_in("(s+1)*(s+1/2)", s_ring), std::nullopt};
  std::vector<ParamPoint> grid;
  for (const auto& u : rational_grid(8))
    for (const auto& w : rational_grid(8)) grid.push_back({u, w});
  for (const auto& u : rational_grid(8)) grid.push_back({u, u * u});
  for (std::size_t c = 0; c < cases; ++c) {
    std::vector<Piece> pieces;
    int k = rng.uniform(1, 4);
    for (int i = 0; i < k; ++i) {
      std::vector<QPoly> cg, rg;
      for (const auto& t : rng.pick(closed)) cg.push_back(P(t));
      for (const auto& t : rng.pick(removed)) rg.push_back(P(t));
      pieces.push_back(Piece{LocallyClosedSet{make_ideal(R, cg), rg}, rng.pick(labels), std::nullopt});
    }
    auto strata = refine_partition(pieces, {}, 40);
    auto key = [](const std::optional<QPoly>& b) { return b ? b->to_string() : std::string("<degenerate>"); };
    bool ok = true;
    for (const auto& pt : grid) {
      std::optional<std::string> expect;
      // Label order = order of first appearance, so the winner is the earliest
      // group with some piece containing the point.
      std::vector<std::string> order;
      for (const auto& pc : pieces)
        if (std::find(order.begin(), order.end(), key(pc.b)) == order.end()) order.push_back(key(pc.b));
      for (const auto& lbl : order) {
        for (const auto& pc : pieces)
          if (key(pc.b) == lbl && pc.region.contains(pt)) expect = lbl;
        if (expect) break;
      }
      std::vector<std::string> hits;
      for (const auto& st : strata)
        if (st.contains(pt)) hits.push_back(key(st.b));
      if (expect)
        ok = ok && hits.size() == 1 && hits[0] == *expect;
      else
        ok = ok && hits.empty();
    }
    std::string desc;
    for (const auto& pc : pieces) desc += pc.region.to_string() + " -> " + key(pc.b) + "; ";
    r.record(ok, desc);
  }
  return r;
}

inline std::vector<SuiteResult> run_all_properties(std::uint64_t seed, std::size_t cases) {
  return {prop_term_orders(seed, cases),         prop_commutative_groebner(seed + 1, cases),
          prop_left_groebner(seed + 2, cases),   prop_weyl_associativity(seed + 3, cases),
          prop_act_products(seed + 4, cases),    prop_residue_field(seed + 5, cases),
          prop_refine_partition(seed + 6, cases)};
}

}  // namespace bsgen::testing
