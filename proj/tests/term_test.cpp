#include <gtest/gtest.h>

#include "natdual/congruence.hpp"
#include "natdual/detail/closure.hpp"
#include "natdual/term.hpp"
#include "support.hpp"

namespace natdual {
namespace {

TEST(Terms, ParsePrintRoundTrip) {
  for (const char* s : {"x0", "(join (meet x0 x1) (top))", "(neg (oplus x2 x2))"}) {
    EXPECT_EQ(Term::parse(s).to_string(), s);
  }
  EXPECT_EQ(Term::parse("  ( meet x0   x1 ) ").to_string(), "(meet x0 x1)");
  EXPECT_EQ(Term::parse("(join (meet x0 x1) x3)").variable_bound(), 4u);
}

TEST(Terms, ParseErrorsCarryOffsets) {
  try {
    Term::parse("(meet x0 y)");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("offset 9"), std::string::npos) << e.what();
  }
  EXPECT_THROW(Term::parse("(meet x0"), InputError);
  EXPECT_THROW(Term::parse("x0 x1"), InputError);
  EXPECT_THROW(Term::parse(""), InputError);
}

TEST(Terms, EvalErrors) {
  auto l = catalog::dl2();
  std::vector<Elem> env{0, 1};
  EXPECT_EQ(eval_term(l, Term::parse("(join x0 x1)"), env), 1u);
  EXPECT_THROW(eval_term(l, Term::parse("(join x0 x2)"), env), InputError);
  EXPECT_THROW(eval_term(l, Term::parse("(neg x0)"), env), InputError);
  EXPECT_THROW(eval_term(l, Term::parse("(join x0)"), env), InputError);
  EXPECT_THROW(term_function(l, Term::parse("(join x0 x2)"), 2), InputError);
}

TEST(Terms, TermFunctionAgreesWithEval) {
  auto l = catalog::luk(3);
  Term t = Term::parse("(join (odot x0 (neg x1)) (meet x1 (oplus x0 x0)))");
  TermFunction f = term_function(l, t, 2);
  for (Elem a = 0; a < l.size(); ++a) {
    for (Elem b = 0; b < l.size(); ++b) {
      std::vector<Elem> env{a, b};
      EXPECT_EQ(f.at(env, l.size()), eval_term(l, t, env));
    }
  }
}

TEST(NearUnanimity, ProjectionFails) {
  auto l = catalog::dl2();
  TermFunction p = term_function(l, Term::var(0), 3);
  NuCheck c = check_near_unanimity(l, p);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.counterexample, (std::vector<Elem>{1, 0, 0}));  // (b,a,a)
  TermFunction med = term_function(
      l, Term::parse("(join (join (meet x0 x1) (meet x1 x2)) (meet x0 x2))"), 3);
  EXPECT_TRUE(check_near_unanimity(l, med).holds);
  EXPECT_THROW(check_near_unanimity(l, term_function(l, Term::var(0), 2)), InputError);
}

TEST(NearUnanimity, SearchFindsWitnessesForDualizers) {
  for (const auto& l : testing::dualizers()) {
    auto f = search_nu_function(l, 3);
    ASSERT_TRUE(f.has_value());
    ASSERT_TRUE(f->witness.has_value());
    EXPECT_TRUE(check_near_unanimity(l, *f).holds);
    // The table is the term function of the witness.
    EXPECT_EQ(term_function(l, *f->witness, 3).table, f->table);
  }
  EXPECT_TRUE(search_nu_function(catalog::lattice2(), 3).has_value());
  EXPECT_TRUE(search_nu_function(catalog::dl2(), 4).has_value());
}

TEST(NearUnanimity, NoneWithoutOperations) {
  FiniteAlgebra bare(Signature{}, 2, {});
  EXPECT_FALSE(search_nu_function(bare, 3).has_value());
  // A semilattice has no NU term: every term is a meet of variables.
  auto semi = reduct(catalog::dl2(), {"meet"});
  EXPECT_FALSE(search_nu_function(semi, 3).has_value());
  EXPECT_FALSE(search_nu_function(semi, 4).has_value());
  EXPECT_THROW(search_nu_function(semi, 2), InputError);
}

TEST(FreeAlgebras, OneGeneratedSizes) {
  EXPECT_EQ(free_one_generated(catalog::bool2()).algebra.size(), 4u);
  EXPECT_EQ(free_one_generated(catalog::dl2()).algebra.size(), 3u);
  // Ł_n is semi-primal: unary term functions are exactly the maps keeping
  // 0 and 1 inside {0,1}: 2*2*(n+1)^(n-1).
  EXPECT_EQ(free_one_generated(catalog::luk(2)).algebra.size(), 12u);
  EXPECT_EQ(free_one_generated(catalog::luk(3)).algebra.size(), 64u);
  auto f = free_one_generated(catalog::dl2());
  EXPECT_EQ(f.members[f.generators[0]], (FunctionVector{0, 1}));
}

TEST(FreeAlgebras, TwoGeneratedDistributiveLattice) {
  auto f = free_algebra(catalog::dl2(), 2);
  EXPECT_EQ(f.algebra.size(), 6u);
  EXPECT_EQ(free_algebra(catalog::bool2(), 2).algebra.size(), 16u);
}

TEST(SeparatingTerm, FrozenExamples) {
  EXPECT_EQ(separating_term_posmv(2, 1, 0).to_string(), "(oplus x0 x0)");
  EXPECT_EQ(separating_term_posmv(3, 3, 2).to_string(), "(odot (odot x0 x0) x0)");
  EXPECT_EQ(separating_term_posmv(5, 5, 0).to_string(), "x0");
  EXPECT_THROW(separating_term_posmv(3, 1, 2), InputError);
  EXPECT_THROW(separating_term_posmv(3, 1, 1), InputError);
  EXPECT_THROW(separating_term_posmv(3, 4, 1), InputError);
}

TEST(SeparatingTerm, AllPairsUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    auto l = catalog::posluk(n);
    for (Elem a = 0; a <= static_cast<Elem>(n); ++a) {
      for (Elem b = 0; b < a; ++b) {
        Term t = separating_term_posmv(n, a, b);
        std::vector<Elem> ea{a}, eb{b};
        EXPECT_EQ(eval_term(l, t, ea), static_cast<Elem>(n)) << n << " " << a << " " << b;
        EXPECT_EQ(eval_term(l, t, eb), 0u) << n << " " << a << " " << b;
      }
    }
  }
}

TEST(Convexity, MedianConvexSetsOfChain) {
  auto lat = reduct(catalog::luk(3), {"meet", "join"});
  auto med = term_function(
      lat, Term::parse("(join (join (meet x0 x1) (meet x1 x2)) (meet x0 x2))"), 3);
  std::size_t convex = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    ElementSet s;
    for (Elem e = 0; e < 4; ++e) {
      if (mask >> e & 1) s.push_back(e);
    }
    bool interval = s.empty() || s.back() - s.front() + 1 == s.size();
    EXPECT_EQ(is_convex(lat, med, s), interval) << mask;
    convex += interval;
  }
  EXPECT_EQ(convex, 11u);
  EXPECT_THROW(is_convex(lat, term_function(lat, Term::var(0), 3), {0}), InputError);
}

}  // namespace
}  // namespace natdual
