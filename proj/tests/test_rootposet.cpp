#include "support.hpp"

#include <gtest/gtest.h>

using namespace domreg;

namespace {

RootPoset<GoldenScalar> golden(const char* spec) {
  return RootPoset(RootSystem<GoldenScalar>::build(SystemSpec::parse(spec)));
}

const RootPoset<GoldenScalar>& h3() {
  static const auto p = golden("H3");
  return p;
}
const RootPoset<GoldenScalar>& h4() {
  static const auto p = golden("H4");
  return p;
}

template <class F>
RootSet simple_roots(const RootPoset<F>& p) {
  RootSet s;
  for (std::size_t i = 0; i < p.system().rank(); ++i) s.insert(i);
  return s;
}

template <class F>
std::size_t index_of(const RootPoset<F>& p, std::vector<F> coeffs) {
  auto i = p.system().find(coeffs);
  if (!i) throw std::runtime_error("root not found");
  return *i;
}

}  // namespace

TEST(Leq, Reflexive) {
  for (std::size_t i = 0; i < h4().size(); ++i) EXPECT_TRUE(h4().leq(i, i));
}

TEST(Leq, DependsOnRatio) {
  auto s3 = Sqrt3Scalar::generator();
  RootPoset p1(RootSystem<Sqrt3Scalar>::build(SystemSpec::parse("I2:6:r=1")));
  EXPECT_TRUE(p1.leq(0, index_of(p1, {s3, Sqrt3Scalar(1)})));
  RootPoset p2(RootSystem<Sqrt3Scalar>::build(SystemSpec::parse("I2:6:r=1/2")));
  EXPECT_FALSE(p2.leq(0, index_of(p2, {s3 * Sqrt3Scalar(Rational(1, 2)), Sqrt3Scalar(1)})));
}

TEST(Leq, IsAPartialOrderMatchingCoefficients) {
  const auto& p = h4();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      bool nonneg = true;
      for (std::size_t k = 0; k < 4; ++k)
        nonneg = nonneg && sign(p.system().root(b).coeffs[k] - p.system().root(a).coeffs[k]) >= 0;
      EXPECT_EQ(p.leq(a, b), nonneg);
      if (a != b) EXPECT_FALSE(p.leq(a, b) && p.leq(b, a));
      for (std::size_t c = 0; c < p.size(); ++c)
        if (p.leq(a, b) && p.leq(b, c)) EXPECT_TRUE(p.leq(a, c));
    }
}

TEST(Extremes, MinimalsAndMaximals) {
  for (const auto* p : {&h3(), &h4()}) {
    EXPECT_EQ(p->minimals(p->universe()).set(), simple_roots(*p));
    EXPECT_EQ(p->maximals(p->universe()).size(), 1u);
    EXPECT_TRUE(p->minimals(RootSet()).empty());
  }
}

TEST(ComplementMaximals, Examples) {
  const auto& p = h4();
  EXPECT_TRUE(p.complement_maximals(p.universe()).empty());
  EXPECT_EQ(p.complement_maximals(RootSet()), p.maximals(p.universe()));
  EXPECT_THROW(p.complement_maximals(RootSet{0}), NotIncreasing);
  EXPECT_THROW(p.complement_extensions(RootSet{0}), NotIncreasing);
}

TEST(ComplementMaximals, BothCharacterizationsAgree) {
  for (const auto* p : {&h3(), &h4()})
    for (const auto& a : p->enumerate_antichains()) {
      auto inc = p->ideal(a);
      EXPECT_EQ(p->complement_maximals(inc), p->complement_extensions(inc)) << label(a);
    }
}

TEST(Ideal, Examples) {
  const auto& p = h4();
  EXPECT_TRUE(p.ideal(Antichain()).empty());
  EXPECT_EQ(p.ideal(Antichain(simple_roots(p))), p.universe());
  RootPoset a2(RootSystem<Rational>::build(SystemSpec::parse("I2:3")));
  auto top = index_of(a2, {Rational(1), Rational(1)});
  EXPECT_EQ(a2.ideal(Antichain(RootSet{top})), RootSet{top});
  const std::size_t above = (p.up(0) - RootSet{0}).members().front();
  EXPECT_THROW(p.ideal(Antichain(RootSet{0, above})), NotAntichain);
  EXPECT_THROW(p.make_antichain(RootSet{0, above}), NotAntichain);
}

TEST(Preceq, Examples) {
  RootPoset a2(RootSystem<Rational>::build(SystemSpec::parse("I2:3")));
  auto top = index_of(a2, {Rational(1), Rational(1)});
  Antichain simple(RootSet{0, 1});
  EXPECT_TRUE(a2.preceq(Antichain(RootSet{top}), simple));
  EXPECT_FALSE(a2.preceq(simple, Antichain(RootSet{top})));
  for (const auto& a : h3().enumerate_antichains()) {
    EXPECT_TRUE(h3().preceq(Antichain(), a));
    EXPECT_TRUE(h3().preceq(a, a));
  }
}

TEST(Enumerate, H4Census) {
  auto all = h4().enumerate_antichains();
  EXPECT_EQ(all.size(), 429u);
  std::map<std::size_t, std::size_t> hist;
  for (const auto& a : all) ++hist[a.size()];
  EXPECT_EQ(hist, (std::map<std::size_t, std::size_t>{{0, 1}, {1, 60}, {2, 206}, {3, 142}, {4, 20}}));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
}

TEST(Enumerate, A2ListsFive) {
  RootPoset a2(RootSystem<Rational>::build(SystemSpec::parse("I2:3")));
  auto all = a2.enumerate_antichains();
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all[0], Antichain());
  EXPECT_EQ(all[1], Antichain(RootSet{0}));
  EXPECT_EQ(all[2], Antichain(RootSet{1}));
  EXPECT_EQ(all[3], Antichain(RootSet{2}));
  EXPECT_EQ(all[4], Antichain(RootSet{0, 1}));
}

TEST(Enumerate, AgreesWithSubsetFilter) {
  auto check = [](const auto& p) {
    auto brute = oracle::subset_antichains(p.size(), [&](std::size_t i, std::size_t j) { return p.leq(i, j); });
    EXPECT_EQ(p.enumerate_antichains().size(), brute) << p.system().spec().str();
  };
  check(RootPoset(RootSystem<Rational>::build(SystemSpec::parse("I2:3"))));
  check(RootPoset(RootSystem<GoldenScalar>::build(SystemSpec::parse("I2:5"))));
  check(h3());
}

TEST(Enumerate, CountEqualsIncreasingSets) {
  for (const auto* p : {&h3(), &h4()}) {
    auto n = oracle::increasing_sets(p->size(), [&](std::size_t i, std::size_t j) { return p->leq(i, j); });
    EXPECT_EQ(p->enumerate_antichains().size(), n);
  }
}

TEST(Maximal, H4Breakdown) {
  auto maximal = h4().maximal_antichains();
  EXPECT_EQ(maximal.size(), 152u);
  std::map<std::size_t, std::size_t> hist;
  for (const auto& a : maximal) ++hist[a.size()];
  EXPECT_EQ(hist, (std::map<std::size_t, std::size_t>{{1, 6}, {2, 47}, {3, 79}, {4, 20}}));
  // the six singletons are the six highest roots
  for (const auto& a : maximal)
    if (a.size() == 1) EXPECT_GE(a.members()[0], 54u);
}

TEST(Maximal, DihedralAtMostTwo) {
  for (int m = 2; m <= 12; ++m)
    for (const char* r : {"1", "0.3", "2.7"}) {
      if (m % 2 == 1 && std::string(r) != "1") continue;
      auto rs = RootSystem<ApproxScalar>::build(SystemSpec::parse("I2:" + std::to_string(m) + ":r=" + r));
      RootPoset p(std::move(rs));
      for (const auto& a : p.maximal_antichains()) EXPECT_LE(a.size(), 2u);
    }
}

TEST(Antichains, SizeBoundAndLinearIndependence) {
  auto check = [](const auto& p) {
    for (const auto& a : p.enumerate_antichains()) {
      EXPECT_LE(a.size(), p.system().rank());
      std::vector<std::vector<std::decay_t<decltype(p.system().ratio())>>> rows;
      for (auto i : a.members()) rows.push_back(p.system().root(i).coeffs);
      EXPECT_EQ(oracle::rank(rows), a.size()) << label(a);
    }
  };
  check(h3());
  check(h4());
  for (int m = 3; m <= 6; ++m) {
    auto spec = SystemSpec::parse("I2:" + std::to_string(m));
    switch (select_backend(spec, FieldChoice::Exact)) {
      case Backend::Rational: check(RootPoset(RootSystem<Rational>::build(spec))); break;
      case Backend::Sqrt2: check(RootPoset(RootSystem<Sqrt2Scalar>::build(spec))); break;
      case Backend::Golden: check(RootPoset(RootSystem<GoldenScalar>::build(spec))); break;
      case Backend::Sqrt3: check(RootPoset(RootSystem<Sqrt3Scalar>::build(spec))); break;
      default: FAIL();
    }
  }
  for (int m = 7; m <= 12; ++m) {
    RootPoset p(RootSystem<ApproxScalar>::build(SystemSpec::parse("I2:" + std::to_string(m))));
    for (const auto& a : p.enumerate_antichains()) EXPECT_LE(a.size(), 2u);
  }
}

TEST(Monotonicity, RandomChamberPoints) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(1, 1000), den(1, 97);
  for (const auto* p : {&h3(), &h4()}) {
    for (int t = 0; t < 100; ++t) {
      WeightPoint<GoldenScalar> v;
      for (std::size_t i = 0; i < p->system().rank(); ++i)
        v.x.emplace_back(Rational(num(rng), den(rng)), Rational(0));
      for (std::size_t b = 0; b < p->size(); ++b)
        for (std::size_t g = 0; g < p->size(); ++g)
          if (b != g && p->leq(b, g))
            ASSERT_LT(sign(evaluate(v, p->system().root(b)) - evaluate(v, p->system().root(g))), 0);
    }
  }
}

TEST(RoundTrip, IdealAndMinimals) {
  for (const auto* p : {&h3(), &h4()})
    for (const auto& a : p->enumerate_antichains()) {
      auto inc = p->ideal(a);
      EXPECT_TRUE(p->is_increasing(inc));
      EXPECT_EQ(p->minimals(inc), a);
      EXPECT_EQ(p->ideal(p->minimals(inc)), inc);
    }
}

// Removing minimal elements or adding complement-maximal ones keeps a set
// increasing, and the moved roots land in the other boundary.
TEST(RoundTrip, BoundaryMoves) {
  for (const auto* p : {&h3(), &h4()})
    for (const auto& a : p->enumerate_antichains()) {
      auto inc = p->ideal(a);
      const auto bits = a.set().bits();
      for (std::uint64_t s = bits;; s = (s - 1) & bits) {
        RootSet sub(s);
        auto smaller = inc - sub;
        ASSERT_TRUE(p->is_increasing(smaller));
        EXPECT_TRUE(sub.subset_of(p->complement_maximals(smaller).set()));
        if (s == 0) break;
      }
      auto top = p->complement_maximals(inc).set();
      for (std::uint64_t s = top.bits();; s = (s - 1) & top.bits()) {
        RootSet sub(s);
        auto larger = inc | sub;
        ASSERT_TRUE(p->is_increasing(larger));
        EXPECT_TRUE(sub.subset_of(p->minimals(larger).set()));
        if (s == 0) break;
      }
    }
}

TEST(Hasse, CoversMatchBruteForce) {
  const auto& p = h4();
  std::set<std::pair<std::size_t, std::size_t>> covers;
  for (auto e : p.hasse_edges()) covers.insert(e);
  for (std::size_t b = 0; b < p.size(); ++b)
    for (std::size_t g = 0; g < p.size(); ++g) {
      bool cover = b != g && p.leq(b, g);
      for (std::size_t k = 0; k < p.size() && cover; ++k)
        if (k != b && k != g && p.leq(b, k) && p.leq(k, g)) cover = false;
      EXPECT_EQ(covers.contains({b, g}), cover);
    }
  std::size_t dashed = 0;
  for (auto [b, g] : p.hasse_edges()) dashed += !p.is_reflection_cover(b, g);
  EXPECT_GT(dashed, 0u);
}
