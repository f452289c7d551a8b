#include "natdual/congruence.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "natdual/detail/closure.hpp"

namespace natdual {

Congruence::Congruence(const std::vector<std::size_t>& labels) : block_(labels.size()) {
  std::vector<std::pair<std::size_t, std::size_t>> seen;  // label -> block
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](const auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], seen.size());
      block_[i] = seen.size() - 1;
    } else {
      block_[i] = it->second;
    }
  }
  num_blocks_ = seen.size();
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<std::size_t> l(n);
  std::iota(l.begin(), l.end(), 0);
  return Congruence(l);
}

Congruence Congruence::total(std::size_t n) { return Congruence(std::vector<std::size_t>(n, 0)); }

std::vector<Elem> Congruence::representatives() const {
  std::vector<Elem> rep(num_blocks_);
  for (std::size_t i = block_.size(); i-- > 0;) rep[block_[i]] = static_cast<Elem>(i);
  return rep;
}

bool Congruence::leq(const Congruence& o) const {
  std::vector<std::size_t> image(num_blocks_, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < block_.size(); ++i) {
    auto& im = image[block_[i]];
    if (im == static_cast<std::size_t>(-1)) {
      im = o.block_[i];
    } else if (im != o.block_[i]) {
      return false;
    }
  }
  return true;
}

Congruence Congruence::meet(const Congruence& o) const {
  std::vector<std::size_t> l(block_.size());
  for (std::size_t i = 0; i < block_.size(); ++i) l[i] = block_[i] * o.num_blocks_ + o.block_[i];
  return Congruence(l);
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> l(parent.size());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = find(i);
    return l;
  }
};

}  // namespace

Congruence Congruence::join(const Congruence& o) const {
  UnionFind uf(block_.size());
  auto rep = representatives();
  for (std::size_t i = 0; i < block_.size(); ++i) uf.unite(i, rep[block_[i]]);
  auto orep = o.representatives();
  for (std::size_t i = 0; i < block_.size(); ++i) uf.unite(i, orep[o.block_[i]]);
  return Congruence(uf.labels());
}

bool is_congruence(const FiniteAlgebra& a, const Congruence& t) {
  if (t.size() != a.size()) return false;
  // Compatible iff each operation respects t in each argument separately.
  const Signature& sig = a.signature();
  auto rep = t.representatives();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    if (k == 0) continue;
    std::vector<Elem> args(k), alt(k);
    bool ok = detail::for_each_tuple(a.size(), k, [&](const std::vector<std::size_t>& tup) {
      for (std::size_t j = 0; j < k; ++j) args[j] = static_cast<Elem>(tup[j]);
      Elem r = a.apply(op, args);
      for (std::size_t j = 0; j < k; ++j) {
        alt = args;
        alt[j] = rep[t.block(args[j])];
        if (!t.related(r, a.apply(op, alt))) return false;
      }
      return true;
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

constexpr Elem kUnset = static_cast<Elem>(-1);

struct HomState {
  std::vector<Elem> img;
  std::vector<Elem> processed;
};

bool define(HomState& s, std::deque<Elem>& queue, Elem x, Elem v) {
  if (s.img[x] == kUnset) {
    s.img[x] = v;
    queue.push_back(x);
    return true;
  }
  return s.img[x] == v;
}

bool propagate(const FiniteAlgebra& a, const FiniteAlgebra& b, HomState& s,
               std::deque<Elem>& queue) {
  const Signature& sig = a.signature();
  while (!queue.empty()) {
    Elem e = queue.front();
    queue.pop_front();
    s.processed.push_back(e);
    std::size_t p = s.processed.size() - 1;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t k = sig[op].arity;
      if (k == 0) continue;
      std::vector<Elem> args(k), imgs(k);
      bool ok = detail::for_each_tuple_containing(p, k, [&](const std::vector<std::size_t>& t) {
        for (std::size_t j = 0; j < k; ++j) {
          args[j] = s.processed[t[j]];
          imgs[j] = s.img[args[j]];
        }
        return define(s, queue, a.apply(op, args), b.apply(op, imgs));
      });
      if (!ok) return false;
    }
  }
  return true;
}

void search(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementSet& gens, std::size_t i,
            const HomState& s, std::vector<ElementMap>& out) {
  if (i == gens.size()) {
    out.push_back(ElementMap{s.img});
    return;
  }
  for (Elem v = 0; v < b.size(); ++v) {
    HomState next = s;
    std::deque<Elem> queue;
    if (!define(next, queue, gens[i], v)) continue;
    if (!propagate(a, b, next, queue)) continue;
    search(a, b, gens, i + 1, next, out);
    if (s.img[gens[i]] != kUnset) break;  // image was forced
  }
}

}  // namespace

std::vector<ElementMap> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                       std::optional<ElementSet> gens) {
  if (!(a.signature() == b.signature())) throw InputError("signatures differ");
  ElementSet g = gens ? *gens : generating_set(a);
  if (generate_subalgebra(a, g).size() != a.size()) throw InputError("gens do not generate");
  HomState s{std::vector<Elem>(a.size(), kUnset), {}};
  std::deque<Elem> queue;
  const Signature& sig = a.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    if (sig[op].arity != 0) continue;
    if (!define(s, queue, a.apply(op, {}), b.apply(op, {}))) return {};
  }
  if (!propagate(a, b, s, queue)) return {};
  std::vector<ElementMap> out;
  search(a, b, g, 0, s, out);
  return out;
}

Congruence kernel(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h) {
  if (!is_homomorphism(a, b, h)) throw InputError("kernel of a map that is not a homomorphism");
  return Congruence(std::vector<std::size_t>(h.values.begin(), h.values.end()));
}

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& t) {
  if (!is_congruence(a, t)) throw InputError("not a congruence");
  auto rep = t.representatives();
  const Signature& sig = a.signature();
  std::vector<std::vector<Elem>> tables(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    std::vector<Elem> args(k);
    detail::for_each_tuple(t.num_blocks(), k, [&](const std::vector<std::size_t>& tup) {
      for (std::size_t j = 0; j < k; ++j) args[j] = rep[tup[j]];
      tables[op].push_back(static_cast<Elem>(t.block(a.apply(op, args))));
      return true;
    });
  }
  return FiniteAlgebra(sig, t.num_blocks(), std::move(tables));
}

Congruence generate_congruence(const FiniteAlgebra& a,
                               const std::vector<std::pair<Elem, Elem>>& pairs) {
  UnionFind uf(a.size());
  std::deque<std::pair<Elem, Elem>> work;
  for (auto [x, y] : pairs) {
    if (x >= a.size() || y >= a.size()) throw InputError("pair outside the carrier");
    if (uf.unite(x, y)) work.emplace_back(x, y);
  }
  // Closing under all unary polynomial translations of merged pairs.
  const Signature& sig = a.signature();
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t k = sig[op].arity;
      if (k == 0) continue;
      std::vector<Elem> ax(k), ay(k);
      for (std::size_t pos = 0; pos < k; ++pos) {
        detail::for_each_tuple(a.size(), k - 1, [&](const std::vector<std::size_t>& rest) {
          for (std::size_t j = 0, r = 0; j < k; ++j) {
            if (j == pos) {
              ax[j] = x;
              ay[j] = y;
            } else {
              ax[j] = ay[j] = static_cast<Elem>(rest[r++]);
            }
          }
          Elem u = a.apply(op, ax), v = a.apply(op, ay);
          if (uf.unite(u, v)) work.emplace_back(u, v);
          return true;
        });
      }
    }
  }
  return Congruence(uf.labels());
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& a) {
  std::vector<Congruence> principal;
  std::set<Congruence> seen{Congruence::identity(a.size())};
  for (Elem x = 0; x < a.size(); ++x) {
    for (Elem y = x + 1; y < a.size(); ++y) {
      Congruence c = generate_congruence(a, {{x, y}});
      if (seen.insert(c).second) principal.push_back(c);
    }
  }
  // Every congruence is a join of principal ones.
  std::vector<Congruence> frontier(principal.begin(), principal.end());
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& c : frontier) {
      for (const auto& p : principal) {
        Congruence j = c.join(p);
        if (seen.insert(j).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool in_prevariety(const FiniteAlgebra& a, const FiniteAlgebra& l) {
  if (a.size() <= 1) return true;
  auto homs = enumerate_homs(a, l);
  std::set<std::vector<Elem>> profiles;
  for (Elem x = 0; x < a.size(); ++x) {
    std::vector<Elem> p;
    p.reserve(homs.size());
    for (const auto& h : homs) p.push_back(h(x));
    if (!profiles.insert(std::move(p)).second) return false;
  }
  return true;
}

std::vector<Congruence> relative_congruences(const FiniteAlgebra& a, const FiniteAlgebra& l) {
  std::vector<Congruence> out;
  for (auto& c : all_congruences(a)) {
    if (in_prevariety(quotient(a, c), l)) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace natdual
