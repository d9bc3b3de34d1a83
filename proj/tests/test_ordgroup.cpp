#include <gtest/gtest.h>

#include <random>

#include "klc/errors.hpp"
#include "klc/ordgroup.hpp"

using klc::Exponent;
using klc::Integer;
using klc::LaurentPoly;

namespace {

LaurentPoly v(std::int64_t e, Integer c = 1) { return LaurentPoly::monomial(Exponent{e}, c); }
LaurentPoly P(const char* text) { return LaurentPoly::parse(text); }

LaurentPoly random_poly(std::mt19937& rng, std::size_t rank, int max_terms = 5) {
  std::uniform_int_distribution<int> terms(0, max_terms), exp(-4, 4), coeff(-5, 5);
  std::vector<klc::Term> out;
  const int k = terms(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> e(rank);
    for (auto& x : e) x = exp(rng);
    out.push_back({Exponent(std::span<const std::int64_t>(e)), Integer(coeff(rng))});
  }
  return LaurentPoly::from_terms(std::move(out));
}

}  // namespace

TEST(Exponent, LexicographicOrder) {
  EXPECT_LT((Exponent{0, 5}), (Exponent{1, -3}));
  EXPECT_LT((Exponent{1, -3}), (Exponent{1, 0}));
  EXPECT_TRUE((Exponent{0, 1}).is_positive());
  EXPECT_TRUE((Exponent{-1, 9}).is_negative());
  EXPECT_THROW((void)(Exponent{1} < Exponent{1, 0}), klc::StructuralError);
}

TEST(Exponent, OrderCompatibleWithAddition) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int i = 0; i < 500; ++i) {
    Exponent a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)};
    if (a <= b) EXPECT_LE(a + c, b + c);
    if (a < b) EXPECT_GT(-a, -b);
  }
}

TEST(LaurentPoly, Addition) {
  EXPECT_EQ(v(1) + v(-1), P("v + v^(-1)"));
  const LaurentPoly a = v(3, 2) - v(-2);
  EXPECT_EQ(a + LaurentPoly(), a);
  EXPECT_TRUE(((v(1) - v(-1)) + (v(-1) - v(1))).is_zero());
}

TEST(LaurentPoly, RankMismatchIsStructuralError) {
  const LaurentPoly a = LaurentPoly::monomial(Exponent{1});
  const LaurentPoly b = LaurentPoly::monomial(Exponent{1, 0});
  EXPECT_THROW(a + b, klc::StructuralError);
  EXPECT_THROW(a * b, klc::StructuralError);
}

TEST(LaurentPoly, Multiplication) {
  EXPECT_EQ(v(2) * v(3), v(5));
  EXPECT_EQ((v(1) + v(-1)) * (v(1) - v(-1)), v(2) - v(-2));
  const LaurentPoly a = v(3, 4) + v(-1, -2);
  EXPECT_EQ(a * LaurentPoly::one(1), a);
}

TEST(LaurentPoly, BigCoefficientsDoNotWrap) {
  LaurentPoly a = v(1, Integer("9223372036854775807"));
  LaurentPoly sq = a * a;
  EXPECT_EQ(sq.coefficient(Exponent{2}), Integer("85070591730234615847396907784232501249"));
}

TEST(LaurentPoly, Bar) {
  EXPECT_EQ(v(2).bar(), v(-2));
  EXPECT_EQ(LaurentPoly::constant(3, 1).bar(), LaurentPoly::constant(3, 1));
  EXPECT_EQ((v(1) - v(-1)).bar(), -(v(1) - v(-1)));
}

TEST(LaurentPoly, DegreeAndValuation) {
  auto dv = klc::deg_val(v(2) + v(-5));
  EXPECT_EQ(*dv.degree, Exponent{2});
  EXPECT_EQ(*dv.valuation, Exponent{-5});
  dv = klc::deg_val(LaurentPoly());
  EXPECT_FALSE(dv.degree.has_value());
  EXPECT_FALSE(dv.valuation.has_value());
  dv = klc::deg_val(LaurentPoly::constant(7, 1));
  EXPECT_EQ(*dv.degree, Exponent{0});
  EXPECT_EQ(*dv.valuation, Exponent{0});
}

TEST(LaurentPoly, SkewSplit) {
  EXPECT_EQ((v(-3) - v(3)).skew_split(), v(-3));
  EXPECT_TRUE(LaurentPoly().skew_split().is_zero());
  EXPECT_EQ((v(-1, 2) - v(1, 2)).skew_split(), v(-1, 2));
  EXPECT_THROW((v(1) + v(-1)).skew_split(), klc::PreconditionError);
  EXPECT_THROW(LaurentPoly::constant(1, 1).skew_split(), klc::PreconditionError);
}

TEST(LaurentPoly, SkewSplitRoundTripAndInjective) {
  std::mt19937 rng(11);
  std::vector<std::pair<LaurentPoly, LaurentPoly>> seen;
  for (int i = 0; i < 300; ++i) {
    const std::size_t rank = 1 + i % 3;
    LaurentPoly b = random_poly(rng, rank);
    LaurentPoly skew = b - b.bar();
    LaurentPoly split = skew.skew_split();
    EXPECT_TRUE(split.in_negative_part() || split.is_zero());
    EXPECT_EQ(split - split.bar(), skew);
    for (const auto& [other_skew, other_split] : seen) {
      if (other_split.rank() == split.rank() && other_split == split) EXPECT_EQ(other_skew, skew);
    }
    seen.emplace_back(skew, split);
  }
}

TEST(LaurentPoly, BarInvariantLiftIsUniqueRepresentative) {
  std::mt19937 rng(13);
  for (int i = 0; i < 300; ++i) {
    const std::size_t rank = 1 + i % 2;
    LaurentPoly a = random_poly(rng, rank);
    // sum_{g >= 0} a_g v^g + sum_{g < 0} a_{-g} v^g
    std::vector<klc::Term> sym;
    for (const auto& t : a.terms()) {
      if (!t.exponent.is_negative()) {
        sym.push_back(t);
        if (t.exponent.is_positive()) sym.push_back({-t.exponent, t.coeff});
      }
    }
    LaurentPoly lift = a.bar_invariant_lift();
    EXPECT_EQ(lift, LaurentPoly::from_terms(sym));
    EXPECT_TRUE(lift.is_bar_invariant());
    const LaurentPoly diff = lift - a;
    EXPECT_TRUE(diff.is_zero() || diff.in_negative_part());
    // Uniqueness: a bar-invariant element of A_{<0} is zero, so any other
    // bar-invariant b with b - a in A_{<0} equals the lift.
    LaurentPoly other = lift + random_poly(rng, rank).negative_part();
    if (other.is_bar_invariant()) EXPECT_EQ(other, lift);
  }
}

TEST(LaurentPoly, MirroredSymmetrizationIsCongruentModuloPositivePart) {
  // sum_{g <= 0} a_g v^g + sum_{g > 0} a_{-g} v^g is bar invariant and
  // differs from a by terms of positive degree only.
  std::mt19937 rng(23);
  for (int i = 0; i < 200; ++i) {
    LaurentPoly a = random_poly(rng, 1);
    std::vector<klc::Term> sym;
    for (const auto& t : a.terms()) {
      if (!t.exponent.is_positive()) {
        sym.push_back(t);
        if (t.exponent.is_negative()) sym.push_back({-t.exponent, t.coeff});
      }
    }
    LaurentPoly b = LaurentPoly::from_terms(sym);
    EXPECT_TRUE(b.is_bar_invariant());
    EXPECT_EQ(b, a.bar().bar_invariant_lift().bar());
    for (const auto& t : (b - a).terms()) EXPECT_TRUE(t.exponent.is_positive());
  }
}

TEST(LaurentPoly, RingAxioms) {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    const std::size_t rank = 1 + i % 3;
    LaurentPoly a = random_poly(rng, rank), b = random_poly(rng, rank), c = random_poly(rng, rank);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).bar(), a.bar() * b.bar());
    EXPECT_EQ(a.bar().bar(), a);
    if (!a.is_zero() && !b.is_zero()) {
      EXPECT_EQ(*(a * b).degree(), *a.degree() + *b.degree());
      EXPECT_EQ(*(a * b).valuation(), *a.valuation() + *b.valuation());
    }
  }
}

TEST(LaurentPoly, RenderingRoundTrip) {
  EXPECT_EQ((v(2, 3) - v(-1)).to_string(), "3*v^(2) - 1*v^(-1)");
  EXPECT_EQ(LaurentPoly().to_string(), "0");
  std::mt19937 rng(19);
  for (int i = 0; i < 300; ++i) {
    const std::size_t rank = 1 + i % 3;
    LaurentPoly a = random_poly(rng, rank);
    if (a.is_zero()) continue;
    EXPECT_EQ(LaurentPoly::parse(a.to_string(), rank), a) << a.to_string();
  }
  EXPECT_EQ(LaurentPoly::parse("-2*v^(1,0) + v^(0,-1)", 2),
            LaurentPoly::monomial(Exponent{1, 0}, -2) + LaurentPoly::monomial(Exponent{0, -1}));
  EXPECT_THROW(LaurentPoly::parse("3*w"), klc::UsageError);
}

TEST(LaurentPoly, UnitSign) {
  EXPECT_EQ(LaurentPoly::constant(-1, 1).unit_sign(), -1);
  EXPECT_EQ(LaurentPoly::constant(1, 2).unit_sign(), 1);
  EXPECT_FALSE(LaurentPoly::constant(2, 1).unit_sign().has_value());
  EXPECT_FALSE(v(1).unit_sign().has_value());
}
