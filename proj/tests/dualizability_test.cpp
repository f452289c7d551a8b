#include <gtest/gtest.h>

#include "natdual/dualizability.hpp"
#include "natdual/subpower.hpp"
#include "support.hpp"

namespace natdual {
namespace {

TermFunction median(const FiniteAlgebra& lat) {
  return term_function(lat, Term::parse("(join (join (meet x0 x1) (meet x1 x2)) (meet x0 x2))"), 3);
}

TEST(PartialEndos, TrivialForCatalogChains) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_TRUE(partial_endomorphisms(catalog::luk(n)).all_trivial) << n;
    EXPECT_TRUE(partial_endomorphisms(catalog::posluk(n)).all_trivial) << n;
  }
  EXPECT_TRUE(partial_endomorphisms(catalog::dl2()).all_trivial);
  EXPECT_TRUE(partial_endomorphisms(catalog::bool2()).all_trivial);
}

TEST(PartialEndos, ReductWitness) {
  auto r = reduct(catalog::luk(2), {"oplus", "meet", "join", "top", "bot"});
  auto rep = partial_endomorphisms(r);
  ASSERT_FALSE(rep.all_trivial);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->domain, (ElementSet{0, 1, 2}));
  EXPECT_EQ(rep.witness->images, (std::vector<Elem>{0, 2, 2}));
}

TEST(PartialEndos, ConstantFreeLatticeHasConstantMaps) {
  auto rep = partial_endomorphisms(catalog::lattice2());
  EXPECT_FALSE(rep.all_trivial);
  // the empty subalgebra contributes the empty inclusion
  EXPECT_TRUE(rep.endos.front().domain.empty());
  EXPECT_TRUE(rep.endos.front().trivial);
}

TEST(Squares, Dl2) {
  auto c = classify_square_subalgebras(catalog::dl2());
  ASSERT_EQ(c.subalgebras.size(), 4u);
  EXPECT_EQ(c.subalgebras[0].kind, SquareKind::subdiagonal);
  EXPECT_EQ(c.subalgebras[1].pairs, (std::vector<FunctionVector>{{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(c.subalgebras[1].kind, SquareKind::other);
  EXPECT_EQ(c.subalgebras[2].kind, SquareKind::other);
  EXPECT_EQ(c.subalgebras[3].kind, SquareKind::product);
  EXPECT_FALSE(c.only_subdiagonal_or_product);
}

TEST(Squares, ChainsFollowNegation) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_TRUE(classify_square_subalgebras(catalog::luk(n)).only_subdiagonal_or_product) << n;
    EXPECT_FALSE(classify_square_subalgebras(catalog::posluk(n)).only_subdiagonal_or_product) << n;
  }
  EXPECT_TRUE(classify_square_subalgebras(catalog::bool2()).only_subdiagonal_or_product);
}

TEST(Squares, ClassifyPairs) {
  EXPECT_EQ(classify_pairs({{1, 1}}), SquareKind::subdiagonal);
  EXPECT_EQ(classify_pairs({{0, 0}, {0, 1}}), SquareKind::product);
  EXPECT_EQ(classify_pairs({{0, 1}, {1, 0}}), SquareKind::other);
}

TEST(Interpolation, MonotoneMapsOnThreeChain) {
  std::vector<FunctionVector> mono{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  auto r = is_k_interpolated(mono, {1, 0, 0}, 2);
  EXPECT_FALSE(r.interpolated);
  EXPECT_EQ(r.failing_set, PointSet{0b011});
  EXPECT_TRUE(is_k_interpolated(mono, {1, 0, 0}, 1).interpolated);
  EXPECT_TRUE(is_k_interpolated(mono, {0, 1, 1}, 3).interpolated);
  // the empty set needs A nonempty
  auto e = is_k_interpolated({}, {0, 1, 0}, 1);
  EXPECT_EQ(e.failing_set, PointSet{0});
  EXPECT_TRUE(separates_at_most(mono, {1, 0, 0}));
  EXPECT_FALSE(separates_at_most({{0, 0, 0}, {1, 1, 1}}, {1, 0, 0}));
}

TEST(FiniteBp, Dl2UnaryFailsWithOrderWitness) {
  auto r = check_finite_bp(catalog::dl2(), 1, 2);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.counterexample->points, 2u);
  EXPECT_EQ(r.counterexample->a, (std::vector<FunctionVector>{{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(r.counterexample->f, (FunctionVector{1, 0}));
}

TEST(FiniteBp, BinaryHoldsWithMajority) {
  EXPECT_TRUE(check_finite_bp(catalog::dl2(), 2, 3).holds);
  EXPECT_TRUE(check_finite_bp(catalog::bool2(), 2, 3).holds);
  EXPECT_TRUE(check_finite_bp(catalog::bool2(), 1, 3).holds);
  auto s = check_finite_bp(catalog::luk(2), 2, 3, BpStrategy::sampled, 5, 100);
  EXPECT_TRUE(s.holds);
  EXPECT_GT(s.instances, 0u);
}

TEST(FiniteBp, UnaryViaClassification) {
  auto d = check_unary_bp_via_classification(catalog::dl2());
  EXPECT_TRUE(d.binary_bp);
  EXPECT_TRUE(d.binary_via_nu);
  EXPECT_FALSE(d.unary_bp);
  EXPECT_TRUE(check_unary_bp_via_classification(catalog::luk(2)).unary_bp);
  EXPECT_FALSE(check_unary_bp_via_classification(catalog::posluk(2)).unary_bp);
  // agrees with the direct unary check on the two-element dualizers
  for (const auto& l : {catalog::bool2(), catalog::dl2()}) {
    EXPECT_EQ(check_unary_bp_via_classification(l).unary_bp, check_finite_bp(l, 1, 3).holds);
  }
}

TEST(Crt, SweepOnDl2Powers) {
  auto dl = catalog::dl2();
  auto s = chinese_remainder_sweep(direct_power(dl, 2), dl, 2, 3);
  EXPECT_FALSE(s.counterexample);
  EXPECT_GT(s.systems, 100u);
}

TEST(Crt, ValidationAndPremise) {
  auto dl = catalog::dl2();
  auto a = direct_power(dl, 2);
  auto rel = relative_congruences(a, dl);
  // kernels of the two projections: (0,0) ~ (0,1) and (0,0) ~ (1,0)
  Congruence k0 = generate_congruence(a, {{0, 1}});
  Congruence k1 = generate_congruence(a, {{0, 2}});
  auto r = chinese_remainder_check(a, dl, 2, {{1, k0}, {2, k1}});
  EXPECT_TRUE(r.premise);
  EXPECT_TRUE(r.solvable);
  EXPECT_EQ(r.solution, Elem{0});
  // inconsistent pair under the same congruence
  auto bad = chinese_remainder_check(a, dl, 2, {{0, k0}, {3, k0}});
  EXPECT_FALSE(bad.premise);
  EXPECT_TRUE(bad.holds());
  EXPECT_THROW(chinese_remainder_check(a, dl, 2, {{0, Congruence(std::vector<std::size_t>{0, 1, 1, 0})}}),
               InputError);
  auto m3 = testing::m3();
  EXPECT_THROW(chinese_remainder_check(m3, dl, 2, {{0, Congruence::identity(5)}}), InputError);
}

TEST(Covers, Enumeration) {
  EXPECT_EQ(all_covers(0, 3).size(), 1u);
  EXPECT_TRUE(all_covers(0, 3)[0].empty());
  EXPECT_EQ(all_covers(1, 2).size(), 1u);
  // two points: {X}, {a,b}, {a,X}, {b,X}; three parts: {a,b,X}
  EXPECT_EQ(all_covers(2, 3).size(), 5u);
}

TEST(Jonsson, HoldsOnDl2Subpowers) {
  auto dl = catalog::dl2();
  std::mt19937_64 rng(3);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    for (int t = 0; t < 5; ++t) {
      auto a = testing::random_subpower(dl, dim, 3, rng);
      EXPECT_TRUE(jonsson_finite_cover_check(dl, dim, a, all_covers(dim, 3)).holds);
    }
  }
}

TEST(Jonsson, EmptyCoverFailsForConstantFreeDualizer) {
  auto lat = catalog::lattice2();
  std::vector<FunctionVector> single{FunctionVector{}};
  auto r = jonsson_finite_cover_check(lat, 0, single, {Cover{}});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.failing_cover, std::size_t{0});
  // with constants L has no one-element subalgebra, so there is nothing to fail
  auto dl = catalog::dl2();
  EXPECT_TRUE(jonsson_finite_cover_check(dl, 0, single, {Cover{}}).holds);
  EXPECT_THROW(jonsson_finite_cover_check(dl, 2, {{0, 0}, {1, 1}}, {Cover{0b01}}), InputError);
}

TEST(AntiIso, PowersOfDualizers) {
  auto dl = catalog::dl2();
  for (std::size_t n = 1; n <= 3; ++n) {
    auto r = congruence_spectrum_antiisomorphism(direct_power(dl, n), dl);
    EXPECT_TRUE(r.holds()) << n;
    EXPECT_EQ(r.relative_congruences, std::size_t{1} << r.spectrum_size);
  }
  auto l = catalog::luk(2);
  auto r = congruence_spectrum_antiisomorphism(direct_power(l, 2), l);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.spectrum_size, 2u);
}

TEST(AntiIso, PreconditionReported) {
  auto r = reduct(catalog::luk(2), {"oplus", "meet", "join", "top", "bot"});
  auto rep = congruence_spectrum_antiisomorphism(r, r);
  EXPECT_FALSE(rep.preconditions[1].passed);
  EXPECT_FALSE(rep.holds());
}

TEST(Distributivity, M3IsNot) {
  // Con of a 3-element set with all equivalences is M3.
  std::vector<Congruence> eq{Congruence::identity(3), Congruence(std::vector<std::size_t>{0, 0, 1}),
                             Congruence(std::vector<std::size_t>{0, 1, 0}),
                             Congruence(std::vector<std::size_t>{0, 1, 1}), Congruence::total(3)};
  EXPECT_FALSE(is_distributive(eq));
  EXPECT_TRUE(is_distributive({Congruence::identity(3), Congruence::total(3)}));
}

TEST(Helly, ConstructedPointLiesInAll) {
  auto lat = reduct(catalog::luk(3), {"meet", "join"});
  auto m = median(lat);
  auto r = helly_check(lat, m, {{0, 1, 2}, {1, 2, 3}, {2, 3}, {0, 1, 2, 3}});
  EXPECT_TRUE(r.premise);
  EXPECT_TRUE(r.point_in_all);
  EXPECT_EQ(r.point, Elem{2});
  auto bad = helly_check(lat, m, {{0, 1}, {2, 3}});
  EXPECT_FALSE(bad.premise);
  auto nonconvex = helly_check(lat, m, {{0, 2}});
  EXPECT_FALSE(nonconvex.premise);
  EXPECT_EQ(nonconvex.premise_failure, "set 0 is not convex");
}

}  // namespace
}  // namespace natdual
