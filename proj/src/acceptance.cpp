#include <algorithm>
#include <chrono>
#include <sstream>

#include "natdual/catalog.hpp"
#include "natdual/corpus.hpp"
#include "natdual/dualizability.hpp"
#include "natdual/subpower.hpp"
#include "natdual/term.hpp"

namespace natdual::corpus {

namespace {

struct Dualizer {
  std::string name;
  FiniteAlgebra algebra;
};

std::vector<Dualizer> dualizers() {
  return {{"bool2", catalog::bool2()},
          {"dl2", catalog::dl2()},
          {"luk2", catalog::luk(2)},
          {"luk3", catalog::luk(3)},
          {"posluk2", catalog::posluk(2)}};
}

// Collects failures; the first few are kept for the report.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  bool passed() const { return failures_ == 0; }
  std::string summary(const std::string& counts) const {
    if (passed()) return counts;
    return counts + "; " + std::to_string(failures_) + " failure(s): " + first_;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

FiniteAlgebra as_algebra(const FiniteAlgebra& l, std::size_t dim, std::vector<FunctionVector> members) {
  return comp_algebra(LSpace(FiniteTopology::discrete(dim), l, std::move(members)));
}

std::vector<FunctionVector> sorted(std::vector<FunctionVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool same_space(const LSpace& x, const LSpace& y) {
  return x.topology() == y.topology() && sorted(x.comp()) == sorted(y.comp());
}

std::string show(const std::vector<FunctionVector>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    for (Elem e : vs[i]) s += std::to_string(e);
  }
  return s + "}";
}

// ---- criteria ----

CriterionResult duality_roundtrip(Rng& rng) {
  Tally t;
  std::size_t instances = 0;
  for (const auto& d : dualizers()) {
    for (int i = 0; i < 50; ++i) {
      std::size_t dim = uniform(rng, 1, 3);
      auto a = as_algebra(d.algebra, dim, random_subpower(d.algebra, dim, 3, rng));
      RoundtripReport r = check_duality_roundtrip(a, d.algebra);
      for (const auto& c : r.checks) t.expect(c.passed, d.name + " " + c.name);
      ++instances;
    }
  }
  return {1, "duality round-trip", t.passed(), t.summary(std::to_string(instances) + " algebras"), 0};
}

CriterionResult square_classification() {
  Tally t;
  auto dl = classify_square_subalgebras(catalog::dl2());
  t.expect(dl.subalgebras.size() == 4, "dl2 has " + std::to_string(dl.subalgebras.size()) + " subalgebras");
  const std::vector<std::vector<FunctionVector>> orders{{{0, 0}, {0, 1}, {1, 1}}, {{0, 0}, {1, 0}, {1, 1}}};
  for (const auto& pairs : orders) {
    auto it = std::find_if(dl.subalgebras.begin(), dl.subalgebras.end(),
                           [&](const SquareSubalgebra& s) { return s.pairs == pairs; });
    t.expect(it != dl.subalgebras.end() && it->kind == SquareKind::other, show(pairs) + " not tagged other");
  }
  t.expect(classify_square_subalgebras(catalog::bool2()).only_subdiagonal_or_product, "bool2 flag");
  t.expect(classify_square_subalgebras(catalog::luk(2)).only_subdiagonal_or_product, "luk2 flag");
  return {2, "square classification", t.passed(), t.summary("dl2: 4 subalgebras; bool2, luk2 flagged"), 0};
}

CriterionResult bp_coherence(std::uint64_t seed) {
  Tally t;
  std::ostringstream counts;
  for (const auto& d : dualizers()) {
    auto nu = search_nu_function(d.algebra, 3);
    t.expect(nu && check_near_unanimity(d.algebra, *nu).holds, d.name + " has no ternary NU");
    const bool exhaustive = d.algebra.size() == 2;
    BpReport r = check_finite_bp(d.algebra, 2, 3, exhaustive ? BpStrategy::exhaustive : BpStrategy::sampled,
                                 seed, 500);
    t.expect(r.holds, d.name + " BP(2,3) fails");
    t.expect(exhaustive || r.instances >= 500, d.name + " sampled only " + std::to_string(r.instances));
    counts << (counts.tellp() > 0 ? " " : "") << d.name << ":" << r.instances;
  }
  BpReport unary = check_finite_bp(catalog::dl2(), 1, 2);
  t.expect(!unary.holds && unary.counterexample &&
               unary.counterexample->a == std::vector<FunctionVector>{{0, 0}, {0, 1}, {1, 1}} &&
               unary.counterexample->f == FunctionVector{1, 0},
           "dl2 BP(1,2) lacks the order witness");
  t.expect(check_finite_bp(catalog::bool2(), 1, 3).holds, "bool2 BP(1,3) fails");
  return {3, "BP/NU coherence", t.passed(), t.summary("instances " + counts.str() + "; dl2 k=1 witness reproduced"), 0};
}

CriterionResult partial_endos() {
  Tally t;
  std::vector<Dualizer> all{{"bool2", catalog::bool2()}, {"dl2", catalog::dl2()}};
  for (int n = 1; n <= 4; ++n) {
    all.push_back({"luk" + std::to_string(n), catalog::luk(n)});
    all.push_back({"posluk" + std::to_string(n), catalog::posluk(n)});
  }
  for (const auto& d : all) t.expect(partial_endomorphisms(d.algebra).all_trivial, d.name);
  auto r = partial_endomorphisms(reduct(catalog::luk(2), {"oplus", "meet", "join", "bot", "top"}));
  t.expect(!r.all_trivial && r.witness && r.witness->domain == ElementSet{0, 1, 2} &&
               r.witness->images == std::vector<Elem>{0, 2, 2},
           "reduct witness 0->0, 1/2->1, 1->1 missing");
  return {4, "partial endomorphisms", t.passed(), t.summary(std::to_string(all.size()) + " dualizers trivial; reduct witness reproduced"), 0};
}

CriterionResult separating_terms() {
  Tally t;
  std::size_t pairs = 0;
  for (int n = 1; n <= 6; ++n) {
    auto l = catalog::posluk(n);
    for (Elem a = 0; a <= static_cast<Elem>(n); ++a) {
      for (Elem b = 0; b < a; ++b) {
        Term term = separating_term_posmv(n, a, b);
        std::vector<Elem> ea{a}, eb{b};
        t.expect(eval_term(l, term, ea) == static_cast<Elem>(n) && eval_term(l, term, eb) == 0,
                 "n=" + std::to_string(n) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
        ++pairs;
      }
    }
  }
  return {5, "separating terms", t.passed(), t.summary(std::to_string(pairs) + " pairs"), 0};
}

CriterionResult congruence_representation(Rng& rng) {
  Tally t;
  std::size_t algebras = 0;
  auto dl = catalog::dl2();
  auto square = congruence_spectrum_antiisomorphism(direct_power(dl, 2), dl);
  t.expect(square.holds() && square.relative_congruences == 4, "dl2^2 does not give 4");
  for (const auto& l : {dl, catalog::luk(2)}) {
    for (int i = 0; i < 30; ++i) {
      std::size_t dim = uniform(rng, 1, 3);
      auto a = as_algebra(l, dim, random_subpower(l, dim, 3, rng));
      auto r = congruence_spectrum_antiisomorphism(a, l);
      t.expect(r.holds() && r.relative_congruences == (std::size_t{1} << r.spectrum_size),
               "|A|=" + std::to_string(a.size()));
      ++algebras;
    }
  }
  return {6, "congruence representation", t.passed(), t.summary(std::to_string(algebras) + " algebras; dl2^2 gives 4"), 0};
}

CriterionResult local_to_global(Rng& rng) {
  Tally t;
  std::size_t relations = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& r : reflexive_relations(n)) {
      auto s = priestley_space(FiniteTopology::discrete(n), r);
      bool lep = has_local_extension(s, 2).holds;
      bool tr = is_transitive(r);
      bool gep = has_global_extension(s).holds;
      t.expect(lep == tr && tr == gep, "relation on " + std::to_string(n) + " points");
      ++relations;
    }
  }
  std::size_t random = 0, with_lep = 0;
  for (const auto& l : {catalog::luk(2), catalog::posluk(2)}) {
    for (int i = 0; i < 200; ++i) {
      auto s = random_binary_space(l, uniform(rng, 2, 4), rng);
      ++random;
      if (!has_local_extension(s, 2).holds) continue;
      ++with_lep;
      t.expect(has_global_extension(s).holds, "random space with LEP(2) lacks GEP");
    }
  }
  return {7, "local-to-global", t.passed(),
          t.summary(std::to_string(relations) + " relations; " + std::to_string(random) + " random spaces, " +
                    std::to_string(with_lep) + " with LEP(2)"),
          0};
}

CriterionResult bp_representation(Rng& rng) {
  Tally t;
  std::size_t func_cons = 0, cons_func = 0, maps = 0, morphisms = 0;
  for (const auto& d : dualizers()) {
    const auto& l = d.algebra;
    for (int i = 0; i < 200; ++i) {
      LSpace x = random_lspace(l, uniform(rng, 1, 3), 3, rng);
      t.expect(same_space(func(cons(x, 2)), x), d.name + " Func(Cons X) != X");
      ++func_cons;

      // Cons X has GEP, so it is a valid instance of the other direction.
      ConstrainedSpace cx = cons(x, 2);
      t.expect(cons(func(cx), 2) == cx, d.name + " Cons(Func Cons X) != Cons X");
      ++cons_func;
      ConstrainedSpace s = random_binary_space(l, uniform(rng, 1, 3), rng);
      if (has_global_extension(s).holds) {
        t.expect(cons(func(s), 2) == s, d.name + " Cons(Func S) != S");
        ++cons_func;
      }

      if (i % 4 != 0) continue;
      LSpace y = random_lspace(l, uniform(rng, 1, 3), 3, rng);
      for (const auto& [from, to] : {std::pair{&x, &y}, std::pair{&x, &x}}) {
        std::vector<std::size_t> phi(from->size());
        for (auto& p : phi) p = uniform(rng, 0, to->size() - 1);
        bool lmap = check_lmap(*from, *to, phi).ok();
        bool cmap = is_constrained_map(phi, cons(*from, 2), cons(*to, 2));
        t.expect(lmap == cmap, d.name + " morphism sets differ");
        ++maps;
        morphisms += lmap;
      }
    }
  }
  return {8, "BP representation round-trip", t.passed(),
          t.summary(std::to_string(func_cons) + " Func(Cons X), " + std::to_string(cons_func) +
                    " Cons(Func S) over 5 dualizers; " + std::to_string(maps) + " maps, " +
                    std::to_string(morphisms) + " morphisms"),
          0};
}

CriterionResult birkhoff() {
  Tally t;
  auto dl = catalog::dl2();
  auto spec = spectrum(free_algebra(dl, 2).algebra, dl);
  t.expect(spec.space.size() == 4, "spectrum has " + std::to_string(spec.space.size()) + " points");
  auto c = ccomp(cons(spec.space, 2));
  t.expect(c.size() == 6, "ccomp has " + std::to_string(c.size()) + " elements");
  return {9, "Birkhoff cross-check", t.passed(), t.summary("4 points, 6 compatible functions"), 0};
}

CriterionResult helly() {
  Tally t;
  auto lat = reduct(catalog::luk(3), {"meet", "join"});
  auto m = term_function(lat, Term::parse("(join (join (meet x0 x1) (meet x1 x2)) (meet x0 x2))"), 3);
  std::vector<ElementSet> convex;
  for (unsigned mask = 1; mask < (1u << lat.size()); ++mask) {
    ElementSet s;
    for (Elem e = 0; e < lat.size(); ++e) {
      if (mask >> e & 1) s.push_back(e);
    }
    if (is_convex(lat, m, s)) convex.push_back(std::move(s));
  }
  std::size_t families = 0;
  std::vector<ElementSet> family;
  auto meets = [](const ElementSet& a, const ElementSet& b) {
    return std::any_of(a.begin(), a.end(), [&](Elem e) { return std::binary_search(b.begin(), b.end(), e); });
  };
  auto grow = [&](auto&& self, std::size_t from) -> void {
    if (!family.empty()) {
      HellyResult r = helly_check(lat, m, family);
      t.expect(r.premise && r.point && r.point_in_all, "family of " + std::to_string(family.size()));
      ++families;
    }
    if (family.size() == 5) return;
    for (std::size_t i = from; i < convex.size(); ++i) {
      if (!std::all_of(family.begin(), family.end(), [&](const ElementSet& s) { return meets(s, convex[i]); })) {
        continue;
      }
      family.push_back(convex[i]);
      self(self, i + 1);
      family.pop_back();
    }
  };
  grow(grow, 0);
  return {10, "Helly", t.passed(),
          t.summary(std::to_string(convex.size()) + " convex sets; " + std::to_string(families) + " pairwise-meeting families"),
          0};
}

CriterionResult jonsson(Rng& rng) {
  Tally t;
  std::size_t reps = 0;
  for (const auto& d : dualizers()) {
    const auto& l = d.algebra;
    bool hypotheses = l.size() > 1 && l.signature().has_constants() && partial_endomorphisms(l).all_trivial;
    t.expect(hypotheses, d.name + " fails the hypotheses");
    for (int i = 0; i < 10; ++i) {
      std::size_t dim = uniform(rng, 1, 3);
      auto a = random_subpower(l, dim, 3, rng);
      t.expect(is_distributive(relative_congruences(as_algebra(l, dim, a), l)), d.name + " Con_rel not distributive");
      t.expect(jonsson_finite_cover_check(l, dim, a, all_covers(dim, 3)).holds, d.name + " " + show(a));
      ++reps;
    }
  }
  auto lat = catalog::lattice2();
  auto empty = jonsson_finite_cover_check(lat, 0, {FunctionVector{}}, {Cover{}});
  t.expect(!empty.holds, "lattice2 empty cover does not fail");
  return {11, "Jonsson", t.passed(), t.summary(std::to_string(reps) + " representations; lattice2 empty cover fails"), 0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::optional<int> only,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 11; ++id) {
    if (only && *only != id) continue;
    // Each criterion draws from its own stream so that --only reproduces it.
    Rng rng(seed * 1000 + static_cast<std::uint64_t>(id));
    auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      switch (id) {
        case 1: r = duality_roundtrip(rng); break;
        case 2: r = square_classification(); break;
        case 3: r = bp_coherence(seed); break;
        case 4: r = partial_endos(); break;
        case 5: r = separating_terms(); break;
        case 6: r = congruence_representation(rng); break;
        case 7: r = local_to_global(rng); break;
        case 8: r = bp_representation(rng); break;
        case 9: r = birkhoff(); break;
        case 10: r = helly(); break;
        case 11: r = jonsson(rng); break;
      }
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace natdual::corpus
