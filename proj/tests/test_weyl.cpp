#include <gtest/gtest.h>

#include "support.hpp"

using namespace bsgen;
using namespace bsgen::testing;

namespace {

QWeylRing a1() { return make_weyl_ring(RationalField{}, {"x"}, {"s"}, false); }

QWeylOp op(const std::string& text, const QWeylRing& W) { return parse_operator(text, W); }

bool same_op(const QWeylOp& a, const QWeylOp& b) { return (a.poly().map_to(b.ring().ring) - b.poly()).is_zero(); }

}  // namespace

TEST(WeylProduct, DefiningRelationAndLeibniz) {
  auto W = a1();
  auto x = QWeylOp::x(W, 0), d = QWeylOp::dx(W, 0);
  EXPECT_TRUE(same_op(d * x, op("x*Dx + 1", W)));
  EXPECT_TRUE(same_op(d * x * x, op("x^2*Dx + 2*x", W)));
  auto e = x * d;
  EXPECT_EQ((e * e).to_string(), "x^2*Dx^2 + x*Dx");
  // s is central.
  auto s = QWeylOp::s(W, 0);
  EXPECT_TRUE(same_op(d * s, s * d));
}

TEST(WeylProduct, HigherOrderBinomialExpansion) {
  auto W = a1();
  // ∂² x³ = x³∂² + 6x²∂ + 6x
  EXPECT_TRUE(same_op(op("Dx^2", W) * op("x^3", W), op("x^3*Dx^2 + 6*x^2*Dx + 6*x", W)));
}

TEST(WeylProduct, RingMismatchIsAnError) {
  auto A = a1();
  auto B = make_weyl_ring(RationalField{}, {"y"}, {"s"}, false);
  EXPECT_THROW(QWeylOp::x(A, 0) * QWeylOp::x(B, 0), Error);
}

TEST(ScaleClear, RationalDenominators) {
  auto W = a1();
  auto c = op_scale_clear(op("(s+1) - x/2*Dx", W));
  EXPECT_EQ(c.h, q(2));
  EXPECT_TRUE(same_op(c.op, op("2*s + 2 - x*Dx", W)));
}

TEST(ScaleClear, ResidueDenominators) {
  auto pr = make_qring({"a"});
  ResidueField K(zero_prime(pr));
  auto W = make_weyl_ring(K, {"x"}, {"s"}, false);
  auto A = poly_in("a", pr), am1 = poly_in("a-1", pr);
  std::vector<Poly<ResidueField>::Term> ts;
  Monomial mx(W.ring->nvars()), md(W.ring->nvars());
  mx[W.layout.x[0]] = 1;
  md[W.layout.dx[0]] = 1;
  ts.push_back({mx, K.from_fraction(am1, A)});
  ts.push_back({md, K.from_fraction(QPoly::one(pr), A * am1)});
  WeylOp<ResidueField> a(W, Poly<ResidueField>::from_terms(W.ring, ts));
  auto c = op_scale_clear(a);
  // h is a rational multiple of a(a−1); U = h·A re-divides to the input.
  auto ratio = exact_quotient(c.h, A * am1);
  ASSERT_TRUE(ratio.has_value());
  ASSERT_TRUE(ratio->is_constant());
  Rational k = ratio->constant_coeff();
  auto expect = op("(a-1)^2*x + Dx", c.op.ring()).scale(k);
  EXPECT_TRUE(same_op(c.op, expect)) << c.op.to_string();
}

TEST(LeftGroebner, KnownExamples) {
  auto W = a1();
  auto I = left_buchberger(std::vector<QWeylOp>{op("x", W), op("Dx", W)}, TermOrder::degrevlex());
  EXPECT_TRUE(I.contains_one());

  auto J = left_buchberger(std::vector<QWeylOp>{op("x*Dx - s", W), op("x", W)}, TermOrder::degrevlex());
  bool has = false;
  for (const auto& g : J.gb()) has = has || same_op(g, op("s + 1", W));
  EXPECT_TRUE(has);

  auto K = left_buchberger(std::vector<QWeylOp>{op("Dx", W)}, TermOrder::degrevlex());
  ASSERT_EQ(K.gb().size(), 1u);
  EXPECT_TRUE(same_op(K.gb()[0], op("Dx", W)));
}

TEST(LeftGroebner, LeftIdealsAreNotTwoSided) {
  auto W = a1();
  // A₁·∂x does not contain ∂x·x − x·∂x... but it does contain x·∂x; never x.
  auto I = left_buchberger(std::vector<QWeylOp>{op("Dx", W)}, TermOrder::degrevlex());
  EXPECT_TRUE(left_normal_form(op("x*Dx", W), I).is_zero());
  EXPECT_FALSE(left_normal_form(op("Dx*x", W), I).is_zero());
  EXPECT_FALSE(left_normal_form(op("x", W), I).is_zero());
}

TEST(LeftGroebner, NormalFormExamples) {
  auto W = a1();
  auto S1 = left_buchberger(std::vector<QWeylOp>{op("s+1", W)}, TermOrder::degrevlex());
  EXPECT_TRUE(left_normal_form(op("s+1", W), S1).is_zero());
  auto E = left_buchberger(std::vector<QWeylOp>{op("x*Dx - s", W)}, TermOrder::degrevlex());
  EXPECT_TRUE(same_op(left_normal_form(op("x*Dx", W), E), op("s", W)));
  EXPECT_TRUE(same_op(left_normal_form(op("Dx*x", W), E), op("s+1", W)));
}

TEST(LeftGroebner, CofactorsReproduceBasis) {
  auto W = a1();
  std::vector<QWeylOp> gens = {op("x*Dx - s", W), op("x", W)};
  GroebnerOptions<RationalField> opts;
  opts.tracked = {0, 1};
  auto I = left_buchberger(gens, TermOrder::degrevlex(), opts);
  for (std::size_t k = 0; k < I.gb().size(); ++k) {
    auto sum = I.cofactors[k][0] * gens[0].with_order(TermOrder::degrevlex()) +
               I.cofactors[k][1] * gens[1].with_order(TermOrder::degrevlex());
    EXPECT_TRUE(same_op(sum, I.gb()[k])) << I.gb()[k].to_string();
  }
}

TEST(Subring, ExtractsEliminatedElements) {
  auto W = a1();
  std::vector<int> kill = {W.layout.x[0], W.layout.dx[0]};
  auto order = TermOrder::block(kill, TermOrder::degrevlex());
  auto I = left_buchberger(std::vector<QWeylOp>{op("x*Dx - s", W), op("x", W)}, order);
  auto kept = subring_elements(I, kill);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_TRUE(same_op(kept[0], op("s+1", W)));

  auto D = left_buchberger(std::vector<QWeylOp>{op("Dx", W)}, order);
  EXPECT_TRUE(subring_elements(D, kill).empty());

  auto W2 = make_weyl_ring(RationalField{}, {"x"}, {"s1", "s2"}, false);
  auto T = left_buchberger(std::vector<QWeylOp>{op("s1-s2", W2), op("x", W2)},
                           TermOrder::block({W2.layout.x[0], W2.layout.dx[0]}, TermOrder::degrevlex()));
  auto kept2 = subring_elements(T, {W2.layout.x[0], W2.layout.dx[0]});
  ASSERT_EQ(kept2.size(), 1u);
  EXPECT_TRUE(same_op(kept2[0], op("s1-s2", W2)));
}

TEST(Subring, RejectsWrongOrderOrUnpairedVariables) {
  auto W = a1();
  auto I = left_buchberger(std::vector<QWeylOp>{op("x", W)}, TermOrder::degrevlex());
  EXPECT_THROW(subring_elements(I, {W.layout.x[0]}), Error);
  auto J = left_buchberger(std::vector<QWeylOp>{op("x", W)}, TermOrder::block({W.layout.x[0]}, TermOrder::degrevlex()));
  try {
    subring_elements(J, {W.layout.x[0]});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrderBlockMismatch);
  }
}

TEST(Weights, WeightZeroExtraction) {
  auto W = make_weyl_ring(RationalField{}, {"x"}, {"s"}, true);
  auto ws = malgrange_weights(W);
  auto t = QWeylOp::var(W, W.layout.t[0]), dt = QWeylOp::var(W, W.layout.dt[0]);
  EXPECT_TRUE(weight0_extract(std::vector<QWeylOp>{dt}, ws).empty());
  auto keep = weight0_extract(std::vector<QWeylOp>{t * dt}, ws);
  ASSERT_EQ(keep.size(), 1u);
  EXPECT_TRUE(same_op(keep[0], t * dt));
  try {
    weight0_extract(std::vector<QWeylOp>{t + dt}, ws);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HomogeneityViolation);
  }
  // Lifting multiplies by ∂t^d or t^d to reach weight zero.
  auto lifted = lift_to_weight0(std::vector<QWeylOp>{dt, t * t}, ws);
  for (const auto& g : lifted) EXPECT_EQ(multi_weight(g, ws)->at(0), 0);
}

TEST(Malgrange, GeneratorCounts) {
  auto one = malgrange_ideal(instance({"x"}, {"x"}));
  EXPECT_EQ(one.gens.size(), 3u);
  auto two = malgrange_ideal(instance({"x", "y"}, {"x", "y"}));
  EXPECT_EQ(two.gens.size(), 6u);
  auto par = malgrange_ideal(instance({"x"}, {"x^2+a"}, {"a"}));
  ASSERT_EQ(par.gens.size(), 3u);
  EXPECT_EQ(par.ring.layout.central.size(), 1u);
  // ∂x + 2x·u·∂t
  const auto& r = par.ring;
  auto expect = QWeylOp::dx(r, 0) + QWeylOp::rational(r, q(2)) * QWeylOp::x(r, 0) *
                                        QWeylOp::var(r, r.layout.u[0]) * QWeylOp::var(r, r.layout.dt[0]);
  EXPECT_TRUE(same_op(par.gens[1], expect));
}
