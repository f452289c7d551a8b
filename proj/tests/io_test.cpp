#include <gtest/gtest.h>

#include <algorithm>

#include "natdual/io.hpp"
#include "natdual/lspace.hpp"
#include "natdual/term.hpp"
#include "support.hpp"

namespace natdual::io {
namespace {

std::size_t count(const std::string& s, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

TEST(Document, SkipsCommentsAndBlankLines) {
  auto d = parse_document("# header\n\nkind: \"algebra\"\n  size : 2 \n");
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries[1].key, "size");
  EXPECT_EQ(d.entries[1].value, "2");
  EXPECT_EQ(d.entries[1].line, 4u);
}

TEST(Document, ReportsLineAndColumn) {
  try {
    parse_document("kind: \"algebra\"\nsize: [1, 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 7u);
  }
  try {
    parse_document("a: 1\nno colon here\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(parse_document("a: 1\na: 2\n"), ParseError);
  EXPECT_THROW(parse_document("a:\n"), ParseError);
}

TEST(Algebra, RoundTripsCatalog) {
  for (std::string name : {"bool2", "dl2", "lattice2", "luk2", "luk(3)", "posluk2", "posluk3"}) {
    FiniteAlgebra a = catalog::build(name);
    std::string text = serialize_algebra(a, name);
    FiniteAlgebra b = parse_algebra(parse_document(text));
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(serialize_algebra(b, name), text) << name;
  }
}

TEST(Algebra, RejectsBadTables) {
  const std::string head = "kind: \"algebra\"\nsize: 2\nops: [[\"meet\", 2]]\n";
  EXPECT_NO_THROW(parse_algebra(parse_document(head + "table meet: [[0, 0], [0, 1]]\n")));
  try {
    parse_algebra(parse_document(head + "table meet: [[0, 0], [0, 2]]\n"));
    FAIL();
  } catch (const ValidationError& e) {
    std::string w = e.what();
    EXPECT_NE(w.find("meet"), std::string::npos);
    EXPECT_NE(w.find("(1,1)"), std::string::npos);
  }
  EXPECT_THROW(parse_algebra(parse_document(head + "table meet: [0, 0]\n")), ValidationError);
  EXPECT_THROW(parse_algebra(parse_document(head)), ValidationError);
  EXPECT_THROW(parse_algebra(parse_document(head + "table meet: [[0, 0], [0, 1]]\ncolour: 1\n")),
               ValidationError);
}

TEST(Dualizer, ResolvesBuiltins) {
  EXPECT_EQ(resolve_dualizer("builtin:luk3"), catalog::luk(3));
  EXPECT_THROW(resolve_dualizer("builtin:nope"), InputError);
  EXPECT_THROW(resolve_dualizer("/nonexistent/alg.txt"), InputError);
}

TEST(Space, ParsesConstrainedWithLabels) {
  auto d = parse_space(parse_document(
      "kind: \"constrained\"\n"
      "dualizer: \"builtin:dl2\"\n"
      "points: [\"a\", \"b\"]\n"
      "A{b,a}: [[\"0\", \"0\"], [\"1\", \"0\"], [\"1\", \"1\"]]\n"));
  ASSERT_TRUE(d.constrained);
  // Tuples are reordered to ascending point order: b >= a.
  EXPECT_EQ(d.constrained->at(0b11), (std::vector<FunctionVector>{{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(d.constrained->at(0b01).size(), 2u);
  auto again = parse_space(parse_document(serialize_space(d)));
  EXPECT_EQ(*again.constrained, *d.constrained);
  EXPECT_EQ(serialize_space(again), serialize_space(d));
}

TEST(Space, RejectsInvalidContent) {
  const std::string head = "kind: \"constrained\"\ndualizer: \"builtin:dl2\"\npoints: [\"a\", \"b\"]\n";
  EXPECT_THROW(parse_space(parse_document(head + "A{a,c}: []\n")), ValidationError);
  EXPECT_THROW(parse_space(parse_document(head + "A{a,b}: [[\"0\"]]\n")), ValidationError);
  EXPECT_THROW(parse_space(parse_document(head + "A{a,b}: [[\"0\", \"2\"]]\n")), ValidationError);
  EXPECT_THROW(parse_space(parse_document(head + "extra: 1\n")), ValidationError);
  EXPECT_THROW(parse_space(parse_document("kind: \"blob\"\npoints: []\n")), ValidationError);
}

TEST(Space, RoundTripsRandomSpaces) {
  std::mt19937_64 rng(11);
  for (const auto& l : testing::dualizers()) {
    for (int i = 0; i < 20; ++i) {
      std::size_t n = corpus::uniform(rng, 1, 3);
      LSpace x = corpus::random_lspace(l, n, 3, rng);
      auto d = make_document(x, "builtin:dl2");
      auto back = parse_space(parse_document(serialize_space(d)), {}, l);
      ASSERT_TRUE(back.lspace);
      EXPECT_EQ(back.topology, x.topology());
      auto a = back.lspace->comp(), b = x.comp();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);

      ConstrainedSpace s = cons(x, 2);
      auto cd = make_document(s, "builtin:dl2");
      auto cback = parse_space(parse_document(serialize_space(cd)), {}, l);
      EXPECT_EQ(*cback.constrained, s);
    }
  }
}

TEST(Space, RoundTripsUnaryAndRelation) {
  auto l = catalog::luk(2);
  UnaryConstrainedSpace u(FiniteTopology::discrete(3), l, true, {{0, 2}, {0, 2}, {0, 1, 2}}, {0, 0, 2});
  auto d = make_document(u, "builtin:luk2");
  std::string text = serialize_space(d);
  EXPECT_NE(text.find("approx: [[\"p0\",\"p1\"],[\"p2\"]]"), std::string::npos);
  auto back = parse_space(parse_document(text));
  EXPECT_EQ(*back.unary, u);

  auto r = parse_space(parse_document(
      "kind: \"relation\"\npoints: [\"x\", \"y\"]\nleq: [[\"x\", \"x\"], [\"y\", \"y\"], [\"x\", \"y\"]]\n"));
  EXPECT_EQ(*r.relation, (Relation{0b11, 0b10}));
  EXPECT_EQ(serialize_space(parse_space(parse_document(serialize_space(r)))), serialize_space(r));
}

TEST(Dot, TwoChain) {
  auto d = make_document(priestley_space(FiniteTopology::discrete(2), {0b11, 0b10}), "builtin:dl2");
  std::string out = export_dot(d);
  EXPECT_EQ(count(out, "->"), 1u);
  EXPECT_NE(out.find("\"p0\" -> \"p1\""), std::string::npos);
  EXPECT_EQ(out, export_dot(d));
}

TEST(Dot, AntichainHasNoEdges) {
  auto d = make_document(priestley_space(FiniteTopology::discrete(3), {0b001, 0b010, 0b100}), "builtin:dl2");
  EXPECT_EQ(count(export_dot(d), "->"), 0u);
  EXPECT_EQ(count(export_dot(Relation{0b01, 0b10}, {"a", "b"}), "->"), 0u);
}

TEST(Dot, SpectrumOfFreeBooleanAlgebra) {
  auto l = catalog::bool2();
  auto spec = spectrum(free_one_generated(l).algebra, l);
  ASSERT_EQ(spec.space.size(), 2u);
  std::string out = export_dot(make_document(spec.space, "builtin:bool2"));
  EXPECT_EQ(count(out, "->"), 0u);
  EXPECT_EQ(count(out, "{0,1}"), 2u);
}

TEST(Dot, UnaryClusters) {
  auto l = catalog::luk(2);
  UnaryConstrainedSpace u(FiniteTopology::discrete(3), l, true, {{0, 2}, {0, 2}, {0, 1, 2}}, {0, 0, 2});
  std::string out = export_dot(make_document(u, "builtin:luk2"));
  EXPECT_EQ(count(out, "subgraph cluster_"), 1u);
}

}  // namespace
}  // namespace natdual::io
