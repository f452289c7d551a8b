#include "natdual/corpus.hpp"

#include <set>

#include "natdual/subpower.hpp"

namespace natdual::corpus {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<FunctionVector> random_subpower(const FiniteAlgebra& l, std::size_t dim,
                                            std::size_t max_seeds, Rng& rng) {
  std::vector<FunctionVector> seeds(uniform(rng, 1, max_seeds));
  for (auto& s : seeds) {
    s.resize(dim);
    for (auto& e : s) e = static_cast<Elem>(uniform(rng, 0, l.size() - 1));
  }
  return generate_subpower(l, dim, seeds);
}

FiniteTopology random_topology(std::size_t n, Rng& rng) {
  if (n == 0 || uniform(rng, 0, 1) == 0) return FiniteTopology::discrete(n);
  std::vector<PointSet> subbasis(uniform(rng, 1, n));
  for (auto& s : subbasis) s = uniform(rng, 0, (PointSet{1} << n) - 1);
  return FiniteTopology::generated(n, subbasis);
}

LSpace random_lspace(const FiniteAlgebra& l, std::size_t n, std::size_t max_seeds, Rng& rng) {
  FiniteTopology top = random_topology(n, rng);
  auto cont = continuous_functions(top, l.size());
  std::vector<FunctionVector> seeds(uniform(rng, 1, max_seeds));
  for (auto& s : seeds) s = cont[uniform(rng, 0, cont.size() - 1)];
  return LSpace(top, l, generate_subpower(l, n, seeds));
}

ConstrainedSpace random_binary_space(const FiniteAlgebra& l, std::size_t n, Rng& rng) {
  std::vector<ElementSet> subs;
  for (auto& s : enumerate_subuniverses(l)) {
    if (!s.empty()) subs.push_back(std::move(s));
  }
  std::vector<ElementSet> ax;
  for (std::size_t x = 0; x < n; ++x) ax.push_back(subs[uniform(rng, 0, subs.size() - 1)]);
  auto pick = [&](const ElementSet& s) { return s[uniform(rng, 0, s.size() - 1)]; };

  ConstraintMap m;
  m[0] = {FunctionVector{}};
  for (std::size_t x = 0; x < n; ++x) {
    for (Elem a : ax[x]) m[singleton(x)].push_back({a});
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<FunctionVector> seeds(uniform(rng, 1, 3));
      for (auto& s : seeds) s = {pick(ax[x]), pick(ax[y])};
      std::vector<FunctionVector> a;
      while (true) {
        a = generate_subpower(l, 2, seeds);
        std::set<Elem> first, second;
        for (const auto& p : a) {
          first.insert(p[0]);
          second.insert(p[1]);
        }
        std::optional<FunctionVector> missing;
        for (Elem e : ax[x]) {
          if (!first.count(e)) missing = FunctionVector{e, pick(ax[y])};
        }
        for (Elem e : ax[y]) {
          if (!second.count(e)) missing = FunctionVector{pick(ax[x]), e};
        }
        if (!missing) break;
        seeds.push_back(*missing);
      }
      m[singleton(x) | singleton(y)] = std::move(a);
    }
  }
  return ConstrainedSpace(FiniteTopology::discrete(n), l, 2, std::move(m));
}

std::vector<Relation> reflexive_relations(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y) off.emplace_back(x, y);
    }
  }
  std::vector<Relation> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
    Relation r(n, 0);
    for (std::size_t x = 0; x < n; ++x) r[x] = singleton(x);
    for (std::size_t i = 0; i < off.size(); ++i) {
      if ((bits >> i) & 1) r[off[i].first] |= singleton(off[i].second);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace natdual::corpus
