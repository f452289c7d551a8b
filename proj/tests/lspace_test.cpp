#include <gtest/gtest.h>

#include "natdual/lspace.hpp"
#include "natdual/term.hpp"
#include "support.hpp"

namespace natdual {
namespace {

TEST(Topology, OpensAndValidation) {
  auto s = FiniteTopology::from_opens(2, {0b00, 0b01, 0b11});
  EXPECT_EQ(s.neighbourhood(0), 0b01u);
  EXPECT_EQ(s.neighbourhood(1), 0b11u);
  EXPECT_EQ(s.opens(), (std::vector<PointSet>{0b00, 0b01, 0b11}));
  EXPECT_TRUE(s.is_closed(0b10));
  EXPECT_THROW(FiniteTopology::from_opens(2, {0b01, 0b11}), InputError);
  EXPECT_THROW(FiniteTopology::from_opens(3, {0, 0b001, 0b010, 0b111}), InputError);
  EXPECT_THROW(FiniteTopology::discrete(65), BudgetError);
  EXPECT_EQ(FiniteTopology::discrete(4).opens().size(), 16u);
  EXPECT_EQ(FiniteTopology::indiscrete(4).opens().size(), 2u);
}

TEST(Topology, SierpinskiHasOnlyConstantMaps) {
  auto s = FiniteTopology::from_opens(2, {0b00, 0b01, 0b11});
  auto fs = continuous_functions(s, 2);
  EXPECT_EQ(fs, (std::vector<FunctionVector>{{0, 0}, {1, 1}}));
  EXPECT_EQ(continuous_functions(FiniteTopology::discrete(3), 2).size(), 8u);
}

TEST(Topology, QuotientOfSierpinski) {
  auto s = FiniteTopology::from_opens(3, {0, 0b001, 0b011, 0b111});
  // identify points 1 and 2: image is {0} < {0,1}
  auto q = s.quotient({0, 1, 1}, 2);
  EXPECT_EQ(q.neighbourhood(0), 0b01u);
  EXPECT_EQ(q.neighbourhood(1), 0b11u);
  // identify 0 and 2: neither {0,2} nor {1} is open, so the quotient is indiscrete
  auto r = s.quotient({0, 1, 0}, 2);
  EXPECT_EQ(r.neighbourhood(0), 0b11u);
  EXPECT_EQ(r.neighbourhood(1), 0b11u);
}

TEST(Topology, ContinuityBetweenSpaces) {
  auto s = FiniteTopology::from_opens(2, {0b00, 0b01, 0b11});
  auto d = FiniteTopology::discrete(2);
  EXPECT_TRUE(is_continuous(d, s, {0, 1}));
  EXPECT_FALSE(is_continuous(s, d, {0, 1}));
  EXPECT_TRUE(is_continuous(s, d, {1, 1}));
}

TEST(LSpaceType, RejectsMalformedComp) {
  auto dl = catalog::dl2();
  auto d2 = FiniteTopology::discrete(2);
  EXPECT_THROW(LSpace(d2, dl, {{0, 1}}), InputError);  // constants missing
  EXPECT_THROW(LSpace(d2, dl, {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {0}}), InputError);
  auto sier = FiniteTopology::from_opens(2, {0b00, 0b01, 0b11});
  EXPECT_THROW(LSpace(sier, dl, {{0, 0}, {0, 1}, {1, 1}}), InputError);
  EXPECT_NO_THROW(LSpace(d2, dl, {{1, 1}, {0, 0}, {0, 1}}));
}

TEST(Spectrum, KnownSizes) {
  auto dl = catalog::dl2();
  auto sp = spectrum(direct_power(dl, 3), dl);
  EXPECT_EQ(sp.space.size(), 3u);
  EXPECT_TRUE(sp.space.topology().is_discrete());
  EXPECT_EQ(sp.space.comp().size(), 8u);
  EXPECT_EQ(spectrum(free_one_generated(catalog::bool2()).algebra, catalog::bool2()).space.size(),
            2u);
  EXPECT_EQ(spectrum(free_algebra(dl, 2).algebra, dl).space.size(), 4u);
}

TEST(Spectrum, EmptyAlgebraHasOnePoint) {
  FiniteAlgebra empty(Signature({{"meet", 2}, {"join", 2}}), 0, {{}, {}});
  auto sp = spectrum(empty, catalog::lattice2());
  EXPECT_EQ(sp.space.size(), 1u);
  EXPECT_TRUE(sp.space.comp().empty());
}

TEST(Duality, RoundTripOnDualizersAndPowers) {
  for (const auto& l : testing::dualizers()) {
    for (std::size_t n = 0; n <= 2; ++n) {
      auto rep = check_duality_roundtrip(direct_power(l, n), l);
      for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " " << n;
    }
  }
}

TEST(Duality, OutsideThePrevarietyEtaIsNotInjective) {
  auto rep = check_duality_roundtrip(testing::m3(), catalog::dl2());
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.checks[0].passed);
  EXPECT_FALSE(rep.checks[0].witness.empty());
}

TEST(Duality, SpaceRoundTrip) {
  auto l = catalog::luk(2);
  LSpace x(FiniteTopology::discrete(2), l, generate_subpower(l, 2, {{0, 1}, {1, 1}}));
  auto rep = check_duality_roundtrip(x);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name;
}

TEST(Duality, Naturality) {
  auto dl = catalog::dl2();
  auto a = direct_power(dl, 1);
  auto b = direct_power(dl, 2);
  // diagonal embedding 2 -> 2^2
  ElementMap diag{{0, 3}};
  EXPECT_TRUE(check_naturality(a, b, diag, dl).passed);
  for (const auto& h : enumerate_homs(b, direct_power(dl, 2))) {
    EXPECT_TRUE(check_naturality(b, direct_power(dl, 2), h, dl).passed);
  }
  EXPECT_THROW(check_naturality(a, b, ElementMap{{3, 0}}, dl), InputError);
}

TEST(Duality, SpectrumIsContravariantlyFunctorial) {
  auto l = catalog::luk(2);
  auto a = direct_power(l, 1), b = direct_power(l, 2), c = direct_power(l, 2);
  auto sa = spectrum(a, l), sb = spectrum(b, l), sc = spectrum(c, l);
  ElementMap h{{0, 4, 8}};  // diagonal
  for (const auto& g : enumerate_homs(b, c)) {
    ElementMap gh;
    for (Elem x : h.values) gh.values.push_back(g(x));
    auto lhs = spectrum_map(sa, sc, gh);
    auto sh = spectrum_map(sa, sb, h), sg = spectrum_map(sb, sc, g);
    for (std::size_t p = 0; p < lhs.size(); ++p) EXPECT_EQ(lhs[p], sh[sg[p]]);
  }
}

TEST(Properties, SeparatedFullRegular) {
  auto dl = catalog::dl2();
  auto sier = FiniteTopology::from_opens(2, {0b00, 0b01, 0b11});
  LSpace consts(sier, dl, {{0, 0}, {1, 1}});
  auto p = space_properties(consts);
  EXPECT_FALSE(p.separated);
  EXPECT_TRUE(p.full);
  EXPECT_FALSE(p.completely_regular);
  EXPECT_FALSE(p.discrete);
  auto q = separated_quotient(consts);
  EXPECT_EQ(q.space.size(), 1u);
  EXPECT_EQ(q.map, (std::vector<std::size_t>{0, 0}));
  EXPECT_TRUE(space_properties(q.space).separated);

  // Unbounded lattice: constant maps are extra homomorphisms, so not full.
  auto lat = catalog::lattice2();
  LSpace one(FiniteTopology::discrete(1), lat, {{0}, {1}});
  auto r = space_properties(one);
  EXPECT_TRUE(r.separated);
  EXPECT_FALSE(r.full);
  EXPECT_FALSE(check_duality_roundtrip(one).ok());
}

TEST(Properties, RegularizeAndDiscretize) {
  auto dl = catalog::dl2();
  LSet s{3, dl, {{0, 0, 0}, {1, 1, 1}, {0, 0, 1}}};
  LSpace reg = regularize(s);
  EXPECT_EQ(reg.topology().neighbourhood(0), 0b011u);
  EXPECT_TRUE(space_properties(reg).completely_regular);
  EXPECT_TRUE(discretize(s).topology().is_discrete());
}

TEST(Morphisms, LMapChecks) {
  auto dl = catalog::dl2();
  LSpace x(FiniteTopology::discrete(2), dl, {{0, 0}, {0, 1}, {1, 1}});
  LSpace y(FiniteTopology::discrete(2), dl, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_FALSE(check_lmap(x, y, {0, 1}).reflects);  // (1,0) pulls back outside
  EXPECT_TRUE(check_lmap(y, x, {0, 1}).ok());
  EXPECT_TRUE(check_lmap(x, y, {0, 0}).ok());
  EXPECT_FALSE(is_lspace_isomorphism(x, y, {0, 1}));
  EXPECT_TRUE(is_lspace_isomorphism(x, x, {0, 1}));
}

}  // namespace
}  // namespace natdual
