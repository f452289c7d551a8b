#include "natdual/topology.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace natdual {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxPoints) {
    throw BudgetError("spaces are limited to " + std::to_string(kMaxPoints) + " points");
  }
}

PointSet full(std::size_t n) { return n == 64 ? ~PointSet{0} : (PointSet{1} << n) - 1; }

}  // namespace

std::vector<std::size_t> members(PointSet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::vector<PointSet> subsets_up_to(std::size_t n, std::size_t k) {
  std::vector<PointSet> out{0};
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      PointSet s = 0;
      for (std::size_t i : idx) s |= singleton(i);
      out.push_back(s);
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

FiniteTopology FiniteTopology::discrete(std::size_t n) {
  check_size(n);
  std::vector<PointSet> nb(n);
  for (std::size_t x = 0; x < n; ++x) nb[x] = singleton(x);
  return FiniteTopology(std::move(nb));
}

FiniteTopology FiniteTopology::indiscrete(std::size_t n) {
  check_size(n);
  return FiniteTopology(std::vector<PointSet>(n, full(n)));
}

FiniteTopology FiniteTopology::generated(std::size_t n, const std::vector<PointSet>& subbasis) {
  check_size(n);
  std::vector<PointSet> nb(n, full(n));
  for (PointSet s : subbasis) {
    if (s & ~full(n)) throw InputError("subbasic set mentions a point outside the space");
    for (std::size_t x : members(s)) nb[x] &= s;
  }
  return FiniteTopology(std::move(nb));
}

FiniteTopology FiniteTopology::from_opens(std::size_t n, const std::vector<PointSet>& opens) {
  check_size(n);
  std::set<PointSet> fam(opens.begin(), opens.end());
  if (!fam.count(0)) throw InputError("open sets must include the empty set");
  if (!fam.count(full(n))) throw InputError("open sets must include the whole space");
  for (PointSet a : fam) {
    if (a & ~full(n)) throw InputError("open set mentions a point outside the space");
    for (PointSet b : fam) {
      if (!fam.count(a | b)) throw InputError("open sets are not closed under union");
      if (!fam.count(a & b)) throw InputError("open sets are not closed under intersection");
    }
  }
  return generated(n, opens);
}

PointSet FiniteTopology::all() const { return full(size()); }

bool FiniteTopology::is_open(PointSet s) const {
  for (std::size_t x : members(s)) {
    if (nbhd_[x] & ~s) return false;
  }
  return true;
}

bool FiniteTopology::is_discrete() const {
  for (std::size_t x = 0; x < size(); ++x) {
    if (nbhd_[x] != singleton(x)) return false;
  }
  return true;
}

std::vector<PointSet> FiniteTopology::opens(const Budget& budget) const {
  std::set<PointSet> seen{0};
  std::vector<PointSet> frontier{0};
  while (!frontier.empty()) {
    std::vector<PointSet> next;
    for (PointSet s : frontier) {
      for (PointSet u : nbhd_) {
        if (seen.insert(s | u).second) {
          if (seen.size() > budget.carrier_limit) throw BudgetError("too many open sets");
          next.push_back(s | u);
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

FiniteTopology FiniteTopology::quotient(const std::vector<std::size_t>& block_of,
                                        std::size_t blocks) const {
  if (block_of.size() != size()) throw InputError("partition size does not match the space");
  std::vector<PointSet> cls(blocks, 0);
  for (std::size_t x = 0; x < size(); ++x) cls.at(block_of[x]) |= singleton(x);
  auto saturate = [&](PointSet s) {
    PointSet out = 0;
    for (std::size_t x : members(s)) out |= cls[block_of[x]];
    return out;
  };
  // Smallest saturated open set containing each class, pushed down.
  std::vector<PointSet> nb(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    PointSet s = cls[b];
    while (true) {
      PointSet t = s;
      for (std::size_t x : members(s)) t |= nbhd_[x];
      t = saturate(t);
      if (t == s) break;
      s = t;
    }
    PointSet down = 0;
    for (std::size_t x : members(s)) down |= singleton(block_of[x]);
    nb[b] = down;
  }
  return FiniteTopology(std::move(nb));
}

bool is_continuous(const FiniteTopology& x, const FiniteTopology& y,
                   const std::vector<std::size_t>& f) {
  if (f.size() != x.size()) return false;
  // f[U_p] must lie inside U_{f(p)}.
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (f[p] >= y.size()) return false;
    for (std::size_t q : members(x.neighbourhood(p))) {
      if (!contains(y.neighbourhood(f[p]), f[q])) return false;
    }
  }
  return true;
}

bool is_continuous_into_discrete(const FiniteTopology& x, const FunctionVector& f) {
  if (f.size() != x.size()) return false;
  for (std::size_t p = 0; p < x.size(); ++p) {
    for (std::size_t q : members(x.neighbourhood(p))) {
      if (f[q] != f[p]) return false;
    }
  }
  return true;
}

std::vector<FunctionVector> continuous_functions(const FiniteTopology& x, std::size_t base,
                                                 const Budget& budget) {
  std::vector<FunctionVector> out;
  FunctionVector f(x.size());
  const std::size_t n = x.size();
  // p and q are tied when either lies in the other's neighbourhood.
  auto consistent = [&](std::size_t p) {
    for (std::size_t q = 0; q < p; ++q) {
      if ((contains(x.neighbourhood(p), q) || contains(x.neighbourhood(q), p)) && f[p] != f[q]) {
        return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == n) {
      if (out.size() >= budget.carrier_limit) throw BudgetError("too many continuous functions");
      out.push_back(f);
      return;
    }
    for (Elem v = 0; v < base; ++v) {
      f[p] = v;
      if (consistent(p)) rec(p + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace natdual
