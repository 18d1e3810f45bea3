#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsgen;
using namespace bsgen::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

std::vector<std::string> printed(const std::vector<PrimeIdealQ>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

IdealC whole(const QInstance& inst) { return make_ideal(param_ring(inst), {}); }

}  // namespace

TEST(Residue, InvertExamples) {
  auto ra = make_qring({"a"});
  ResidueField K(zero_prime(ra));
  auto inv = residue_invert(K, K.from_poly(poly_in("a", ra)));
  EXPECT_EQ(K.to_string(inv), "(1)/(a)");

  auto rab = make_qring({"a", "b"});
  ResidueField L(make_prime(rab, {poly_in("a-b", rab)}, true));
  EXPECT_EQ(code_of([&] { residue_invert(L, L.from_poly(poly_in("a-b", rab))); }), ErrorCode::DivisionByZeroModQ);

  auto e = K.from_fraction(poly_in("a^2", ra), poly_in("a+1", ra));
  auto ie = residue_invert(K, e);
  EXPECT_TRUE(same(ie.num(), poly_in("a+1", ra)));
  EXPECT_TRUE(same(ie.den(), poly_in("a^2", ra)));
}

TEST(Residue, ReductionModuloPrime) {
  auto ra = make_qring({"a"});
  ResidueField K(make_prime(ra, {poly_in("a^2+1", ra)}, true));
  auto i = K.from_poly(poly_in("a", ra));
  EXPECT_EQ(K.to_rational(K.mul(i, i)), std::optional<Rational>(q(-1)));
  EXPECT_TRUE(K.is_zero(K.add(K.inv(i), i)));
  EXPECT_EQ(code_of([&] { make_prime(ra, {QPoly::one(ra)}, true); }), ErrorCode::UnitIdeal);
}

TEST(Primes, KnownExamples) {
  auto R = make_qring({"a", "c"});
  EXPECT_EQ(printed(minimal_primes(make_ideal(R, {poly_in("a*c", R)}))), (std::vector<std::string>{"<a>", "<c>"}));
  EXPECT_EQ(printed(minimal_primes(make_ideal(R, {poly_in("a^2", R)}))), (std::vector<std::string>{"<a>"}));

  auto B = make_qring({"a", "b"});
  auto ps = minimal_primes(make_ideal(B, {poly_in("a*(a-1)", B), poly_in("a*b", B)}));
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].to_string(), "<a>");
  EXPECT_TRUE(same(ps[1].ideal.gb()[0], poly_in("b", B)) || same(ps[1].ideal.gb()[0], poly_in("a-1", B)));
  EXPECT_TRUE(ps[1].contains(poly_in("a-1", B)) && ps[1].contains(poly_in("b", B)));
  for (const auto& p : ps) EXPECT_TRUE(p.certified);
}

TEST(Primes, ZeroIdealAndIrreducibleUnivariate) {
  auto R = make_qring({"a"});
  auto z = minimal_primes(make_ideal(R, {}));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_TRUE(z[0].is_zero());
  auto irr = minimal_primes(make_ideal(R, {poly_in("a^2+1", R)}));
  ASSERT_EQ(irr.size(), 1u);
  EXPECT_EQ(irr[0].to_string(), "<a^2 + 1>");
}

TEST(Primes, ErrorsAreExplicit) {
  auto R = make_qring({"a", "b"});
  EXPECT_EQ(code_of([&] { minimal_primes(make_ideal(R, {QPoly::one(R)})); }), ErrorCode::UnitIdeal);
  EXPECT_EQ(code_of([&] { minimal_primes(make_ideal(R, {poly_in("a^2+b^2+1", R)})); }),
            ErrorCode::DecompositionUnsupported);
}

TEST(Generic, QuadraticFamilyOverZeroPrime) {
  auto inst = instance({"x"}, {"x^2+a"}, {"a"});
  auto g = generic_bs(inst, zero_prime(param_ring(inst)));
  EXPECT_TRUE(same(g.b, poly_in("s+1", g.b.ring())));
  auto unit = exact_quotient(g.h, poly_in("a", g.h.ring()));
  ASSERT_TRUE(unit.has_value());
  EXPECT_TRUE(unit->is_constant());
  EXPECT_TRUE(g.remainder.is_zero());
  EXPECT_TRUE(g.verified);
  EXPECT_TRUE(check_congruence(g, inst));
  for (const auto& a0 : {q(1), q(-1), q(2), q(1, 2)}) EXPECT_TRUE(specialize_check(g, inst, {a0}));
  EXPECT_EQ(code_of([&] { specialize_check(g, inst, {q(0)}); }), ErrorCode::PointOutsideStratum);
}

TEST(Generic, QuadraticFamilyOnSpecialFibre) {
  auto inst = instance({"x"}, {"x^2+a"}, {"a"});
  auto pr = param_ring(inst);
  auto g = generic_bs(inst, make_prime(pr, {poly_in("a", pr)}, true));
  EXPECT_TRUE(same(g.b, poly_in("(s+1)*(s+1/2)", g.b.ring())));
  EXPECT_TRUE(check_congruence(g, inst));
  EXPECT_TRUE(specialize_check(g, inst, {q(0)}));
  EXPECT_EQ(code_of([&] { specialize_check(g, inst, {q(1)}); }), ErrorCode::PointOutsideStratum);
}

TEST(Generic, LinearFamily) {
  auto inst = instance({"x"}, {"a*x"}, {"a"});
  auto pr = param_ring(inst);
  auto g = generic_bs(inst, zero_prime(pr));
  EXPECT_TRUE(same(g.b, poly_in("s+1", g.b.ring())));
  auto ratio = exact_quotient(g.h, poly_in("a", g.h.ring()));
  ASSERT_TRUE(ratio && ratio->is_constant());
  // U = c·∂x with h = c·a.
  auto expect = parse_operator("Dx", g.U.ring()).scale(ratio->constant_coeff());
  EXPECT_TRUE((g.U.poly() - expect.poly()).is_zero()) << g.U.to_string();
  EXPECT_TRUE(specialize_check(g, inst, {q(5)}));
  EXPECT_EQ(code_of([&] { generic_bs(inst, make_prime(pr, {poly_in("a", pr)}, true)); }),
            ErrorCode::FamilyVanishesModQ);
}

TEST(Generic, TwoParameterFamily) {
  auto inst = instance({"x"}, {"a*x^2+c"}, {"a", "c"});
  auto g = generic_bs(inst, zero_prime(param_ring(inst)));
  EXPECT_TRUE(same(g.b, poly_in("s+1", g.b.ring())));
  EXPECT_TRUE(check_congruence(g, inst));
  EXPECT_TRUE(specialize_check(g, inst, {q(3), q(-2)}));
}

namespace {

BSIdeal<ResidueField> synthetic(const ResidueField& K, const std::vector<std::string>& ss,
                                const std::vector<std::string>& gens) {
  auto W = make_weyl_ring(K, {"x"}, ss, false);
  auto ring = make_ring(K, ss);
  // Parse over ℚ[s, a] and move coefficients into K.
  auto names = ss;
  for (const auto& a : K.param_ring()->names) names.push_back(a);
  auto qr = make_qring(names);
  BSIdeal<ResidueField> B{ring, {}, {}, W, 0, {}};
  for (const auto& g : gens) {
    QPoly p = parse_poly(g, qr);
    std::map<Monomial, QPoly> by_s;
    for (const auto& t : p.terms()) {
      Monomial sm(ss.size()), am(K.param_ring()->nvars());
      for (std::size_t j = 0; j < ss.size(); ++j) sm[j] = t.mono[j];
      for (std::size_t k = 0; k < am.size(); ++k) am[k] = t.mono[ss.size() + k];
      auto& c = by_s.try_emplace(sm, QPoly(K.param_ring())).first->second;
      c += QPoly::monomial(K.param_ring(), am, t.coeff);
    }
    std::vector<Poly<ResidueField>::Term> ts;
    for (const auto& [m, c] : by_s) ts.push_back({m, K.from_poly(c)});
    B.generators.push_back(Poly<ResidueField>::from_terms(ring, ts));
    B.certificates.emplace_back(W);
  }
  return B;
}

}  // namespace

TEST(Rationalize, Strategies) {
  auto ra = make_qring({"a"});
  ResidueField K(zero_prime(ra));
  auto basis = rationalize(synthetic(K, {"s1", "s2"}, {"(s1+1)*(s2+1)", "(s1+1)*(s1+s2+2)"}));
  EXPECT_EQ(basis.strategy, "basis");
  EXPECT_TRUE(same(basis.b, poly_in("(s1+1)*(s2+1)", basis.b.ring())));

  auto lin = rationalize(synthetic(K, {"s1", "s2"}, {"s1+a", "s2-a"}));
  EXPECT_EQ(lin.strategy, "linear-search");
  EXPECT_TRUE(same(lin.b, poly_in("s1+s2", lin.b.ring())));

  EXPECT_EQ(code_of([&] { rationalize(synthetic(K, {"s"}, {"s+a"}), 4); }), ErrorCode::NonRationalCertificate);
}

TEST(Sampling, KnownExamples) {
  auto R = make_qring({"a"});
  auto nonzero = sample_point(LocallyClosedSet{make_ideal(R, {}), {poly_in("a", R)}});
  ASSERT_TRUE(nonzero.has_value());
  EXPECT_NE((*nonzero)[0], 0);
  auto zero = sample_point(LocallyClosedSet{make_ideal(R, {poly_in("a", R)}), {}});
  ASSERT_TRUE(zero.has_value());
  EXPECT_EQ((*zero)[0], 0);
  LocallyClosedSet empty{make_ideal(R, {poly_in("a", R)}), {poly_in("a", R)}};
  EXPECT_FALSE(sample_point(empty).has_value());
  EXPECT_TRUE(certified_empty(empty));
}

TEST(Sampling, GridIsDeterministicAndDistinct) {
  auto g = rational_grid(100);
  ASSERT_EQ(g.size(), 100u);
  EXPECT_EQ(g[0], 0);
  EXPECT_EQ(g[1], 1);
  EXPECT_EQ(g[2], -1);
  std::set<Rational> uniq(g.begin(), g.end());
  EXPECT_EQ(uniq.size(), 100u);
  EXPECT_EQ(rational_grid(100), g);
}

TEST(Sampling, PointsOnCurves) {
  auto R = make_qring({"a", "c"});
  LocallyClosedSet par{make_ideal(R, {poly_in("c-a^2", R)}), {poly_in("a", R)}};
  // Only grid values of c with a rational square root give points.
  auto pts = sample_points(par, 10);
  EXPECT_GE(pts.size(), 2u);
  for (const auto& p : pts) {
    EXPECT_EQ(p[1], p[0] * p[0]);
    EXPECT_NE(p[0], 0);
  }
}

TEST(RefinePartition, KnownExamples) {
  auto R = make_qring({"a"});
  auto S = make_qring({"s"});
  LocallyClosedSet nz{make_ideal(R, {}), {poly_in("a", R)}};
  LocallyClosedSet z{make_ideal(R, {poly_in("a", R)}), {}};
  LocallyClosedSet one{make_ideal(R, {poly_in("a-1", R)}), {}};
  auto b1 = poly_in("s+1", S), b2 = poly_in("(s+1)*(s+1/2)", S);

  auto merged = refine_partition({Piece{z, b1, {}}, Piece{one, b1, {}}});
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_EQ(merged[0].pieces.size(), 2u);

  auto split = refine_partition({Piece{nz, b1, {}}, Piece{z, b2, {}}});
  ASSERT_EQ(split.size(), 2u);
  EXPECT_TRUE(same(*split[0].b, b1));
  EXPECT_TRUE(same(*split[1].b, b2));
  // Disjointness is certified, so no exclusion is carried.
  EXPECT_TRUE(split[1].excluded.empty());
  EXPECT_EQ(split[0].region_string(), "[V(0) \\ V(a)]");
  EXPECT_EQ(split[1].region_string(), "[V(a)]");

  // Overlapping pieces keep the exclusion.
  auto overlap = refine_partition({Piece{z, b1, {}}, Piece{LocallyClosedSet{make_ideal(R, {}), {}}, b2, {}}});
  ASSERT_EQ(overlap.size(), 2u);
  EXPECT_EQ(overlap[1].excluded.size(), 1u);
  EXPECT_FALSE(overlap[1].contains({q(0)}));
  EXPECT_TRUE(overlap[1].contains({q(3)}));
}

TEST(RefinePartition, EmptyStrataAreDropped) {
  auto R = make_qring({"a"});
  auto S = make_qring({"s"});
  LocallyClosedSet all{make_ideal(R, {}), {}};
  LocallyClosedSet z{make_ideal(R, {poly_in("a", R)}), {}};
  auto out = refine_partition({Piece{all, poly_in("s+1", S), {}}, Piece{z, poly_in("s+2", S), {}}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].emptiness, Emptiness::NonEmpty);
}

TEST(Stratify, QuadraticFamily) {
  auto inst = instance({"x"}, {"x^2+a"}, {"a"});
  auto S = stratify(inst, whole(inst));
  ASSERT_EQ(S.strata.size(), 2u);
  EXPECT_TRUE(same(*S.strata[0].b, poly_in("s+1", S.strata[0].b->ring())));
  EXPECT_TRUE(same(*S.strata[1].b, poly_in("(s+1)*(s+1/2)", S.strata[1].b->ring())));
  EXPECT_TRUE(S.strata[0].contains({q(1)}));
  EXPECT_FALSE(S.strata[0].contains({q(0)}));
  EXPECT_TRUE(S.strata[1].contains({q(0)}));
  for (const auto& a0 : rational_grid(100)) EXPECT_EQ(S.locate({a0}).size(), 1u);
}

TEST(Stratify, NoParameters) {
  auto inst = instance({"x"}, {"x"});
  auto S = stratify(inst, whole(inst));
  ASSERT_EQ(S.strata.size(), 1u);
  EXPECT_TRUE(same(*S.strata[0].b, poly_in("s+1", S.strata[0].b->ring())));
  EXPECT_TRUE(S.strata[0].contains({}));
}

TEST(Stratify, DegenerateStratum) {
  auto inst = instance({"x"}, {"a*x"}, {"a"});
  auto S = stratify(inst, whole(inst));
  ASSERT_EQ(S.strata.size(), 2u);
  EXPECT_TRUE(same(*S.strata[0].b, poly_in("s+1", S.strata[0].b->ring())));
  EXPECT_TRUE(S.strata[1].degenerate());
  EXPECT_TRUE(S.strata[1].contains({q(0)}));
}

TEST(Stratify, TwoParametersEachStratumVerifiedPointwise) {
  auto inst = instance({"x"}, {"a*x^2+c"}, {"a", "c"});
  auto S = stratify(inst, whole(inst));
  EXPECT_EQ(S.strata.size(), 3u);
  auto grid = rational_grid(7);
  for (const auto& a0 : grid)
    for (const auto& c0 : grid) {
      ParamPoint pt{a0, c0};
      auto hits = S.locate(pt);
      ASSERT_EQ(hits.size(), 1u) << a0 << "," << c0;
      const auto& st = S.strata[hits[0]];
      if (st.degenerate()) {
        EXPECT_EQ(a0, 0);
        EXPECT_EQ(c0, 0);
        continue;
      }
      auto piece = st.piece_of(pt);
      ASSERT_TRUE(piece.has_value());
      EXPECT_TRUE(specialize_check(st.witnesses[*piece], inst, pt));
    }
}

TEST(Stratify, UnitAmbientIsRejected) {
  auto inst = instance({"x"}, {"x^2+a"}, {"a"});
  auto pr = param_ring(inst);
  EXPECT_EQ(code_of([&] { stratify(inst, make_ideal(pr, {QPoly::one(pr)})); }), ErrorCode::UnitIdeal);
}

TEST(Family, ParameterCounts) {
  auto f11 = generic_family(1, 1, 1);
  EXPECT_EQ(f11.vars.m(), 2u);
  EXPECT_TRUE(same(f11.f[0], poly_in("a_1_0 + a_1_1*x", f11.ring)));
  EXPECT_EQ(generic_family(1, 1, 2).vars.m(), 3u);
  auto f221 = generic_family(2, 2, 1);
  EXPECT_EQ(f221.vars.m(), 6u);
  EXPECT_EQ(f221.vars.x, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(family_param_name(2, {1, 0}), "a_2_1_0");
  EXPECT_EQ(code_of([] { generic_family(0, 1, 1); }), ErrorCode::InvalidInput);
}

TEST(Instance, ValidationAndSpecialization) {
  EXPECT_EQ(code_of([] { instance({"x", "x"}, {"x"}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { instance({"Dx"}, {"Dx"}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { instance({"x"}, {"x"}, {}, {-1}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { instance({"x"}, {"0"}); }), ErrorCode::InvalidInput);
  auto inst = instance({"x"}, {"a*x+c"}, {"a", "c"});
  auto spec = specialize(inst, {q(2), q(3)});
  EXPECT_EQ(spec.vars.m(), 0u);
  EXPECT_TRUE(same(spec.f[0], poly_in("2*x+3", spec.ring)));
  EXPECT_EQ(code_of([&] { specialize(inst, {q(0), q(0)}); }), ErrorCode::FamilyVanishesModQ);
  EXPECT_EQ(code_of([&] { specialize(inst, {q(0)}); }), ErrorCode::InvalidInput);
}
