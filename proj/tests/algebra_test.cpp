#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

#include "natdual/congruence.hpp"
#include "natdual/detail/closure.hpp"
#include "support.hpp"

namespace natdual {
namespace {

using testing::m3;

// Brute force: every map A -> B, filtered by the homomorphism test.
std::vector<ElementMap> all_homs_brute(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  std::vector<ElementMap> out;
  detail::for_each_tuple(b.size(), a.size(), [&](const std::vector<std::size_t>& t) {
    ElementMap h{std::vector<Elem>(t.begin(), t.end())};
    if (is_homomorphism(a, b, h)) out.push_back(h);
    return true;
  });
  return out;
}

// Every set partition of n points as a label vector (restricted growth strings).
std::vector<Congruence> all_partitions(std::size_t n) {
  std::vector<Congruence> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t m) {
    if (i == n) {
      out.emplace_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= m; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(m, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

TEST(Catalog, LukasiewiczTables) {
  FiniteAlgebra l = catalog::luk(2);
  EXPECT_EQ(l.size(), 3u);
  EXPECT_EQ(l.labels(), (std::vector<std::string>{"0", "1/2", "1"}));
  EXPECT_EQ(l.apply("oplus", {1, 1}), 2u);
  EXPECT_EQ(l.apply("odot", {1, 1}), 0u);
  EXPECT_EQ(l.apply("odot", {2, 1}), 1u);
  EXPECT_EQ(l.apply("neg", {1}), 1u);
  EXPECT_EQ(l.apply("neg", {0}), 2u);
  EXPECT_EQ(catalog::luk(4).labels()[2], "1/2");
  EXPECT_EQ(catalog::value_of(2, 4), (catalog::Rational{1, 2}));
  EXPECT_FALSE(catalog::posluk(3).signature().find("neg"));
}

TEST(Catalog, BuildByName) {
  EXPECT_EQ(catalog::build("luk(3)"), catalog::luk(3));
  EXPECT_EQ(catalog::build("posluk(2)"), catalog::posluk(2));
  EXPECT_EQ(catalog::build("dl2"), catalog::dl2());
  EXPECT_THROW(catalog::build("luk(0)"), InputError);
  EXPECT_THROW(catalog::build("luk(x)"), InputError);
  EXPECT_THROW(catalog::build("heyting3"), InputError);
}

TEST(Catalog, Hyperarchimedean) {
  for (int n = 1; n <= 5; ++n) {
    EXPECT_TRUE(catalog::check_hyperarchimedean(catalog::luk(n)));
    EXPECT_TRUE(catalog::check_hyperarchimedean(catalog::posluk(n)));
  }
  EXPECT_THROW(catalog::check_hyperarchimedean(catalog::dl2()), InputError);
}

TEST(Algebra, ConstructorValidation) {
  Signature sig({{"f", 2}, {"c", 0}});
  EXPECT_THROW(FiniteAlgebra(sig, 2, {{0, 1, 1}, {0}}), InputError);
  EXPECT_THROW(FiniteAlgebra(sig, 2, {{0, 1, 1, 2}, {0}}), InputError);
  EXPECT_THROW(FiniteAlgebra(sig, 0, {{}, {}}), InputError);
  EXPECT_THROW(Signature({{"f", 2}, {"f", 1}}), InputError);
  FiniteAlgebra empty(Signature({{"meet", 2}}), 0, {{}});
  EXPECT_EQ(empty.size(), 0u);
}

TEST(Algebra, DirectPowerAndBudget) {
  FiniteAlgebra p = direct_power(catalog::dl2(), 2);
  EXPECT_EQ(p.size(), 4u);
  // (0,1) meet (1,0) = (0,0); codes are row-major
  EXPECT_EQ(p.apply("meet", {1, 2}), 0u);
  EXPECT_EQ(p.apply("join", {1, 2}), 3u);
  Budget tight;
  tight.carrier_limit = 100;
  EXPECT_THROW(direct_power(catalog::luk(3), 4, tight), BudgetError);
  EXPECT_EQ(direct_power(catalog::dl2(), 0).size(), 1u);
}

TEST(Algebra, SubuniversesOfDl2Square) {
  auto subs = enumerate_subuniverses(direct_power(catalog::dl2(), 2));
  ASSERT_EQ(subs.size(), 4u);
  EXPECT_EQ(subs[0], (ElementSet{0, 3}));
  EXPECT_EQ(subs[1], (ElementSet{0, 1, 3}));
  EXPECT_EQ(subs[2], (ElementSet{0, 2, 3}));
  EXPECT_EQ(subs[3], (ElementSet{0, 1, 2, 3}));
}

TEST(Algebra, SubuniversesAgainstBruteForce) {
  for (const auto& l : testing::dualizers()) {
    FiniteAlgebra sq = direct_power(l, 2);
    if (sq.size() > 16) continue;
    std::size_t brute = 0;
    for (std::size_t mask = 0; mask < (1u << sq.size()); ++mask) {
      ElementSet s;
      for (Elem e = 0; e < sq.size(); ++e) {
        if (mask >> e & 1) s.push_back(e);
      }
      if (is_subuniverse(sq, s)) ++brute;
    }
    EXPECT_EQ(enumerate_subuniverses(sq).size(), brute);
  }
}

TEST(Algebra, GeneratingSetGenerates) {
  for (const auto& l : testing::dualizers()) {
    auto g = generating_set(l);
    EXPECT_EQ(generate_subalgebra(l, g).size(), l.size());
  }
  EXPECT_TRUE(generating_set(catalog::bool2()).empty());
}

TEST(Homomorphisms, MatchBruteForce) {
  std::mt19937_64 rng(7);
  for (const auto& l : testing::dualizers()) {
    for (std::size_t dim = 0; dim <= 2; ++dim) {
      for (int trial = 0; trial < 6; ++trial) {
        auto members = testing::random_subpower(l, dim, 2, rng);
        if (std::pow(double(l.size()), double(members.size())) > 2e5) continue;
        FiniteAlgebra a = subpower_algebra(l, members);
        auto fast = enumerate_homs(a, l);
        auto slow = all_homs_brute(a, l);
        std::sort(fast.begin(), fast.end());
        EXPECT_EQ(fast, slow);
      }
    }
  }
}

TEST(Homomorphisms, KnownCounts) {
  auto dl = catalog::dl2();
  EXPECT_EQ(enumerate_homs(direct_power(dl, 2), dl).size(), 2u);
  EXPECT_EQ(enumerate_homs(direct_power(dl, 3), dl).size(), 3u);
  EXPECT_EQ(enumerate_homs(catalog::luk(2), catalog::luk(2)).size(), 1u);
  EXPECT_EQ(enumerate_homs(m3(), dl).size(), 0u);
  EXPECT_THROW(enumerate_homs(dl, catalog::bool2()), InputError);
  // Hom from the empty algebra is the empty map; into it there is none.
  FiniteAlgebra empty(Signature({{"meet", 2}, {"join", 2}}), 0, {{}, {}});
  EXPECT_EQ(enumerate_homs(empty, catalog::lattice2()).size(), 1u);
  EXPECT_EQ(enumerate_homs(catalog::lattice2(), empty).size(), 0u);
}

TEST(Homomorphisms, LexicographicInGeneratorImages) {
  auto dl = catalog::dl2();
  FiniteAlgebra sq = direct_power(dl, 2);
  // generators (0,1), (1,0): the first projection sends them to (0,1)
  auto homs = enumerate_homs(sq, dl, ElementSet{1, 2});
  ASSERT_EQ(homs.size(), 2u);
  EXPECT_EQ(homs[0].values, (std::vector<Elem>{0, 0, 1, 1}));
  EXPECT_EQ(homs[1].values, (std::vector<Elem>{0, 1, 0, 1}));
  EXPECT_THROW(enumerate_homs(sq, dl, ElementSet{1}), InputError);
}

TEST(Congruences, MatchPartitionBruteForce) {
  std::mt19937_64 rng(11);
  for (const auto& l : testing::dualizers()) {
    for (int trial = 0; trial < 4; ++trial) {
      auto members = testing::random_subpower(l, 2, 2, rng);
      if (members.size() > 7) continue;
      FiniteAlgebra a = subpower_algebra(l, members);
      std::vector<Congruence> brute;
      for (auto& p : all_partitions(a.size())) {
        if (is_congruence(a, p)) brute.push_back(p);
      }
      std::sort(brute.begin(), brute.end());
      EXPECT_EQ(all_congruences(a), brute);
    }
  }
}

TEST(Congruences, KernelsQuotientsAndGeneration) {
  auto dl = catalog::dl2();
  FiniteAlgebra sq = direct_power(dl, 2);
  auto homs = enumerate_homs(sq, dl);
  Congruence k = kernel(sq, dl, homs[0]);
  EXPECT_EQ(k.num_blocks(), 2u);
  EXPECT_EQ(quotient(sq, k).size(), 2u);
  EXPECT_EQ(generate_congruence(sq, {{0, 1}}), k);
  EXPECT_EQ(generate_congruence(catalog::luk(2), {{0, 1}}), Congruence::total(3));
  EXPECT_EQ(all_congruences(catalog::luk(3)).size(), 2u);
  EXPECT_EQ(all_congruences(sq).size(), 4u);
  EXPECT_THROW(quotient(catalog::luk(2), Congruence(std::vector<std::size_t>{0, 0, 1})),
               InputError);
  EXPECT_THROW(kernel(sq, dl, ElementMap{{0, 1, 1, 0}}), InputError);
}

TEST(Congruences, LatticeOperations) {
  Congruence a(std::vector<std::size_t>{0, 0, 1, 2});
  Congruence b(std::vector<std::size_t>{0, 1, 1, 2});
  EXPECT_EQ(a.join(b), Congruence(std::vector<std::size_t>{0, 0, 0, 1}));
  EXPECT_EQ(a.meet(b), Congruence::identity(4));
  EXPECT_TRUE(a.leq(a.join(b)));
  EXPECT_FALSE(a.leq(b));
  EXPECT_EQ(Congruence(std::vector<std::size_t>{5, 5, 2}).blocks(),
            (std::vector<std::size_t>{0, 0, 1}));
}

TEST(Prevariety, Membership) {
  auto dl = catalog::dl2();
  EXPECT_TRUE(in_prevariety(direct_power(dl, 3), dl));
  EXPECT_FALSE(in_prevariety(m3(), dl));
  EXPECT_TRUE(in_prevariety(catalog::luk(2), catalog::luk(4)));
  EXPECT_FALSE(in_prevariety(catalog::luk(3), catalog::luk(2)));
  FiniteAlgebra empty(Signature({{"meet", 2}, {"join", 2}}), 0, {{}, {}});
  EXPECT_TRUE(in_prevariety(empty, catalog::lattice2()));
  FiniteAlgebra single(dl.signature(), 1, {{0}, {0}, {0}, {0}});
  EXPECT_TRUE(in_prevariety(single, dl));
}

TEST(Prevariety, RelativeCongruences) {
  auto dl = catalog::dl2();
  auto rel = relative_congruences(direct_power(dl, 2), dl);
  EXPECT_EQ(rel.size(), 4u);
  // Closed under intersection.
  for (const auto& x : rel) {
    for (const auto& y : rel) {
      EXPECT_NE(std::find(rel.begin(), rel.end(), x.meet(y)), rel.end());
    }
  }
  // simple, and the trivial quotient always lies in ISP(L)
  EXPECT_EQ(relative_congruences(catalog::luk(3), catalog::luk(3)).size(), 2u);
  FiniteAlgebra chain3 = subpower_algebra(dl, {{0, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(relative_congruences(chain3, dl).size(), 4u);
}

}  // namespace
}  // namespace natdual
