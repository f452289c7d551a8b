#include "natdual/constrained.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "natdual/catalog.hpp"
#include "natdual/dualizability.hpp"
#include "natdual/subpower.hpp"

namespace natdual {

namespace {

std::string format_set(PointSet s) {
  std::string out = "{";
  for (std::size_t x : members(s)) {
    if (out.size() > 1) out += ",";
    out += std::to_string(x);
  }
  return out + "}";
}

std::uint64_t code_on(const FunctionVector& f, const std::vector<std::size_t>& pts,
                      std::size_t base) {
  std::uint64_t c = 0;
  for (std::size_t p : pts) c = c * base + f[p];
  return c;
}

std::vector<FunctionVector> product_of(const std::vector<ElementSet>& factors) {
  std::vector<FunctionVector> out{FunctionVector{}};
  for (const auto& fac : factors) {
    std::vector<FunctionVector> next;
    for (const auto& v : out) {
      for (Elem e : fac) {
        next.push_back(v);
        next.back().push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

ElementSet first_coordinates(const std::vector<FunctionVector>& s) {
  std::set<Elem> vals;
  for (const auto& v : s) vals.insert(v[0]);
  return {vals.begin(), vals.end()};
}

ElementSet all_elements(const FiniteAlgebra& l) {
  ElementSet out(l.size());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

// Points tied to x by continuity: f(x) = f(p) whenever p is in U_x or x in U_p.
bool tied(const FiniteTopology& t, std::size_t x, std::size_t p) {
  return contains(t.neighbourhood(x), p) || contains(t.neighbourhood(p), x);
}

struct Step {
  std::size_t point = 0;
  ElementSet values;
  std::vector<std::size_t> ties;
  std::vector<std::pair<PointSet, std::vector<std::size_t>>> checks;
};

// Backtracking over the points of dom, smallest A_x first. Every constraint
// J with 2 <= |J| <= k is checked as soon as its last point is assigned.
void search_compatible(const ConstrainedSpace& s, PointSet dom, const Budget& budget,
                       const std::function<void(const FunctionVector&)>& emit) {
  if (s.at(0).empty()) return;
  std::vector<std::size_t> order = members(dom);
  auto vals = [&](std::size_t x) { return first_coordinates(s.at(singleton(x))); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.at(singleton(a)).size() < s.at(singleton(b)).size();
  });
  std::vector<Step> steps;
  for (std::size_t t = 0; t < order.size(); ++t) {
    Step st;
    st.point = order[t];
    st.values = vals(order[t]);
    for (std::size_t u = 0; u < t; ++u) {
      if (tied(s.topology(), order[t], order[u])) st.ties.push_back(order[u]);
    }
    for (PointSet sub : subsets_up_to(t, s.arity() - 1)) {
      if (sub == 0) continue;
      PointSet j = singleton(order[t]);
      for (std::size_t u : members(sub)) j |= singleton(order[u]);
      st.checks.emplace_back(j, members(j));
    }
    steps.push_back(std::move(st));
  }

  FunctionVector f(s.size(), 0);
  std::size_t nodes = 0;
  std::function<void(std::size_t)> go = [&](std::size_t t) {
    if (t == steps.size()) {
      emit(f);
      return;
    }
    const Step& st = steps[t];
    for (Elem a : st.values) {
      if (++nodes > budget.closure_limit) {
        throw BudgetError("compatible-function search exceeds the budget");
      }
      f[st.point] = a;
      bool ok = std::all_of(st.ties.begin(), st.ties.end(), [&](std::size_t p) { return f[p] == a; });
      for (std::size_t c = 0; ok && c < st.checks.size(); ++c) {
        ok = s.allows_restriction(st.checks[c].first, f);
      }
      if (ok) go(t + 1);
    }
  };
  go(0);
}

bool continuous_on(const FiniteTopology& t, PointSet dom, const FunctionVector& f) {
  for (std::size_t x : members(dom)) {
    for (std::size_t y : members(t.neighbourhood(x) & dom)) {
      if (f[x] != f[y]) return false;
    }
  }
  return true;
}

// M_{f,y} without checking that f itself is compatible.
ElementSet extensions_of(const ConstrainedSpace& s, const LocalFunction& f, std::size_t y) {
  FunctionVector full(s.size(), 0);
  auto dom = members(f.domain);
  for (std::size_t i = 0; i < dom.size(); ++i) full[dom[i]] = f.values[i];
  std::vector<PointSet> checks;
  for (PointSet sub : subsets_up_to(dom.size(), s.arity() - 1)) {
    if (sub == 0) continue;
    PointSet j = singleton(y);
    for (std::size_t u : members(sub)) j |= singleton(dom[u]);
    checks.push_back(j);
  }
  ElementSet out;
  for (Elem a : first_coordinates(s.at(singleton(y)))) {
    full[y] = a;
    bool ok = std::all_of(dom.begin(), dom.end(), [&](std::size_t p) {
      return !tied(s.topology(), y, p) || full[p] == a;
    });
    for (std::size_t c = 0; ok && c < checks.size(); ++c) ok = s.allows_restriction(checks[c], full);
    if (ok) out.push_back(a);
  }
  return out;
}

// Oriented pairs (f(x), f(y)) of A_{x,y}, x != y.
std::set<std::pair<Elem, Elem>> oriented(const ConstrainedSpace& s, std::size_t x, std::size_t y) {
  std::set<std::pair<Elem, Elem>> out;
  for (const auto& p : s.at(singleton(x) | singleton(y))) {
    if (x < y) {
      out.emplace(p[0], p[1]);
    } else {
      out.emplace(p[1], p[0]);
    }
  }
  return out;
}

}  // namespace

// ---- ConstrainedSpace ----

ConstrainedSpace::ConstrainedSpace(FiniteTopology topology, FiniteAlgebra dualizer, std::size_t k,
                                   ConstraintMap constraints)
    : topology_(std::move(topology)), dualizer_(std::move(dualizer)), k_(k),
      constraints_(std::move(constraints)) {
  if (k_ < 2) throw InputError("k-ary constrained spaces need k >= 2; use the unary form for k = 1");
  const std::size_t n = size();
  for (const auto& [i, a] : constraints_) {
    if ((i & ~topology_.all()) != 0 || cardinality(i) > k_) {
      throw InputError("constraint on " + format_set(i) + " is not on at most k points");
    }
  }
  for (PointSet i : subsets_up_to(n, k_)) {
    auto it = constraints_.find(i);
    if (it == constraints_.end()) throw InputError("missing constraint on " + format_set(i));
    auto& a = it->second;
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    const std::size_t dim = cardinality(i);
    std::vector<char> mem(checked_power(dualizer_.size(), dim, Budget{}.table_limit), 0);
    for (const auto& g : a) {
      if (g.size() != dim) throw InputError("constraint tuple on " + format_set(i) + " has wrong length");
      for (Elem e : g) {
        if (e >= dualizer_.size()) throw InputError("constraint value outside the dualizer");
      }
      mem[encode(g, dualizer_.size())] = 1;
    }
    if (!is_subpower(dualizer_, dim, a)) {
      throw InputError("constraint on " + format_set(i) + " is not a subalgebra of L^I");
    }
    member_.emplace(i, std::move(mem));
  }
}

ConstrainedSpace ConstrainedSpace::complete(FiniteTopology topology, FiniteAlgebra dualizer,
                                            std::size_t k, ConstraintMap partial) {
  if (k < 2) throw InputError("k-ary constrained spaces need k >= 2; use the unary form for k = 1");
  const std::size_t n = topology.size();
  const std::size_t top = std::min(k, n);
  auto subsets = subsets_up_to(n, top);
  for (auto it = subsets.rbegin(); it != subsets.rend(); ++it) {
    PointSet i = *it;
    if (partial.count(i)) continue;
    if (cardinality(i) == top) {
      std::vector<ElementSet> factors;
      for (std::size_t x : members(i)) {
        auto single = partial.find(singleton(x));
        factors.push_back(single == partial.end() ? all_elements(dualizer)
                                                  : first_coordinates(single->second));
      }
      partial[i] = product_of(factors);
    } else {
      std::size_t p = 0;
      while (contains(i, p)) ++p;
      PointSet j = i | singleton(p);
      auto pts = members(j);
      std::vector<std::size_t> coords;
      for (std::size_t c = 0; c < pts.size(); ++c) {
        if (pts[c] != p) coords.push_back(c);
      }
      partial[i] = project(partial.at(j), coords);
    }
  }
  return ConstrainedSpace(std::move(topology), std::move(dualizer), k, std::move(partial));
}

const std::vector<FunctionVector>& ConstrainedSpace::at(PointSet i) const {
  auto it = constraints_.find(i);
  if (it == constraints_.end()) throw InputError("no constraint stored on " + format_set(i));
  return it->second;
}

bool ConstrainedSpace::allows(PointSet i, const FunctionVector& g) const {
  auto it = member_.find(i);
  if (it == member_.end() || g.size() != cardinality(i)) return false;
  for (Elem e : g) {
    if (e >= dualizer_.size()) return false;
  }
  return it->second[encode(g, dualizer_.size())] != 0;
}

bool ConstrainedSpace::allows_restriction(PointSet i, const FunctionVector& f) const {
  return member_.at(i)[code_on(f, members(i), dualizer_.size())] != 0;
}

// ---- UnaryConstrainedSpace ----

UnaryConstrainedSpace::UnaryConstrainedSpace(FiniteTopology topology, FiniteAlgebra dualizer,
                                             bool empty_nonempty, std::vector<ElementSet> per_point,
                                             std::vector<std::size_t> approx)
    : topology_(std::move(topology)), dualizer_(std::move(dualizer)),
      empty_nonempty_(empty_nonempty), per_point_(std::move(per_point)) {
  if (per_point_.size() != size() || approx.size() != size()) {
    throw InputError("unary space needs one subalgebra and one block label per point");
  }
  if (!empty_nonempty_ && dualizer_.signature().has_constants()) {
    throw InputError("A_empty must be nonempty when L has constants");
  }
  for (auto& a : per_point_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    for (Elem e : a) {
      if (e >= dualizer_.size()) throw InputError("subalgebra value outside the dualizer");
    }
    if (!is_subuniverse(dualizer_, a)) throw InputError("per-point set is not a subalgebra of L");
  }
  approx_ = Congruence(approx);
}

// ---- validation ----

ConstrainedValidation validate_constrained(const ConstrainedSpace& s, const Budget& budget) {
  ConstrainedValidation v;
  const std::size_t n = s.size();
  const std::size_t k = s.arity();
  const std::size_t base = s.dualizer().size();
  auto fail = [&](const std::string& why) {
    if (v.failure.empty()) v.failure = why;
  };

  v.subdirect = true;
  for (PointSet i : subsets_up_to(n, k)) {
    auto pts = members(i);
    for (std::size_t drop = 0; drop < pts.size() && v.subdirect; ++drop) {
      std::vector<std::size_t> coords;
      for (std::size_t c = 0; c < pts.size(); ++c) {
        if (c != drop) coords.push_back(c);
      }
      if (project(s.at(i), coords) != s.at(i & ~singleton(pts[drop]))) {
        v.subdirect = false;
        fail("projection of A" + format_set(i) + " differs from A" +
             format_set(i & ~singleton(pts[drop])));
      }
    }
  }

  v.separated = true;
  for (std::size_t x = 0; x < n && v.separated; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const auto& a = s.at(singleton(x) | singleton(y));
      if (std::none_of(a.begin(), a.end(), [](const FunctionVector& p) { return p[0] != p[1]; })) {
        v.separated = false;
        fail("points " + std::to_string(x) + " and " + std::to_string(y) + " are not separated");
        break;
      }
    }
  }

  // T(x) = { a in L^k : a in A_x } for every tuple x in X^k.
  const std::size_t tuples = n == 0 ? 0 : checked_power(n, k, budget.table_limit);
  const std::size_t codes = checked_power(base, k, budget.table_limit);
  if (tuples * codes > budget.table_limit) throw BudgetError("continuity check exceeds the budget");
  std::vector<std::vector<char>> table(tuples, std::vector<char>(codes, 0));
  for (std::size_t t = 0; t < tuples; ++t) {
    FunctionVector xs = decode(t, n, k);
    PointSet i = 0;
    for (Elem x : xs) i |= singleton(x);
    auto pts = members(i);
    for (std::size_t c = 0; c < codes; ++c) {
      FunctionVector a = decode(c, base, k);
      FunctionVector local(pts.size());
      std::vector<char> set(pts.size(), 0);
      bool consistent = true;
      for (std::size_t j = 0; j < k && consistent; ++j) {
        std::size_t pos = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), xs[j]) - pts.begin());
        if (set[pos] && local[pos] != a[j]) consistent = false;
        local[pos] = a[j];
        set[pos] = 1;
      }
      table[t][c] = consistent && s.allows(i, local);
    }
  }

  // Openness in X^k, one coordinate at a time: T(x) <= T(x') for x' obtained
  // by moving one coordinate inside its minimal neighbourhood.
  v.continuous = true;
  for (std::size_t t = 0; t < tuples && v.continuous; ++t) {
    FunctionVector xs = decode(t, n, k);
    for (std::size_t j = 0; j < k && v.continuous; ++j) {
      for (std::size_t y : members(s.topology().neighbourhood(xs[j]))) {
        FunctionVector ys = xs;
        ys[j] = static_cast<Elem>(y);
        const auto& to = table[encode(ys, n)];
        for (std::size_t c = 0; c < codes; ++c) {
          if (table[t][c] && !to[c]) {
            v.continuous = false;
            fail("constraint set of " + format_vector(s.dualizer(), decode(c, base, k)) +
                 " is not open");
            break;
          }
        }
        if (!v.continuous) break;
      }
    }
  }

  // Scott form: preimages of principal up-sets of Sub(L^k), with openness
  // tested against full product neighbourhoods.
  std::set<std::vector<char>> targets;
  for (std::size_t t = 0; t < tuples; ++t) targets.insert(table[t]);
  for (std::size_t c = 0; c < codes; ++c) {
    std::vector<char> sg(codes, 0);
    for (const auto& g : generate_subpower(s.dualizer(), k, {decode(c, base, k)})) {
      sg[encode(g, base)] = 1;
    }
    targets.insert(sg);
  }
  auto above = [&](const std::vector<char>& b, std::size_t t) {
    for (std::size_t c = 0; c < codes; ++c) {
      if (b[c] && !table[t][c]) return false;
    }
    return true;
  };
  std::size_t steps = 0;
  v.scott_continuous = true;
  for (const auto& b : targets) {
    for (std::size_t t = 0; t < tuples && v.scott_continuous; ++t) {
      if (!above(b, t)) continue;
      FunctionVector xs = decode(t, n, k);
      std::vector<std::vector<std::size_t>> nb;
      for (Elem x : xs) nb.push_back(members(s.topology().neighbourhood(x)));
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        if (++steps > budget.closure_limit) throw BudgetError("Scott check exceeds the budget");
        FunctionVector ys(k);
        for (std::size_t j = 0; j < k; ++j) ys[j] = static_cast<Elem>(nb[j][idx[j]]);
        if (!above(b, encode(ys, n))) {
          v.scott_continuous = false;
          break;
        }
        std::size_t j = k;
        while (j > 0 && idx[j - 1] + 1 == nb[j - 1].size()) idx[--j] = 0;
        if (j == 0) break;
        ++idx[j - 1];
      }
    }
    if (!v.scott_continuous) break;
  }
  return v;
}

ConstrainedValidation validate_constrained(const UnaryConstrainedSpace& s) {
  ConstrainedValidation v;
  const std::size_t n = s.size();
  auto fail = [&](const std::string& why) {
    if (v.failure.empty()) v.failure = why;
  };
  v.subdirect = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (s.at(x).empty() == s.empty_nonempty()) {
      v.subdirect = false;
      fail("A_" + std::to_string(x) + " does not project onto A_empty");
    }
    for (std::size_t y = x + 1; y < n; ++y) {
      if (s.equivalent(x, y) && s.at(x) != s.at(y)) {
        v.subdirect = false;
        fail("equivalent points " + std::to_string(x) + " and " + std::to_string(y) +
             " carry different subalgebras");
      }
    }
  }
  v.continuous = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y : members(s.topology().neighbourhood(x))) {
      if (!std::includes(s.at(y).begin(), s.at(y).end(), s.at(x).begin(), s.at(x).end())) {
        v.continuous = false;
        fail("fibers of A are not open at " + std::to_string(x));
      }
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (s.equivalent(x, y)) continue;
      for (std::size_t x2 : members(s.topology().neighbourhood(x))) {
        for (std::size_t y2 : members(s.topology().neighbourhood(y))) {
          if (s.equivalent(x2, y2)) {
            v.continuous = false;
            fail("the equivalence is not closed");
          }
        }
      }
    }
  }
  v.separated = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (s.equivalent(x, y)) continue;
      const auto& a = s.at(x);
      const auto& b = s.at(y);
      bool sep = a.size() + b.size() > 2 || (a.size() == 1 && b.size() == 1 && a != b);
      if (a.empty() || b.empty()) sep = false;
      if (!sep) {
        v.separated = false;
        fail("points " + std::to_string(x) + " and " + std::to_string(y) + " are not separated");
      }
    }
  }
  // Scott form: {x : B <= A_x} open for every subalgebra B of L.
  v.scott_continuous = true;
  for (const auto& b : enumerate_subuniverses(s.dualizer())) {
    PointSet pre = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (std::includes(s.at(x).begin(), s.at(x).end(), b.begin(), b.end())) pre |= singleton(x);
    }
    if (!s.topology().is_open(pre)) v.scott_continuous = false;
  }
  return v;
}

// ---- compatible functions ----

std::vector<FunctionVector> ccomp(const ConstrainedSpace& s, const Budget& budget) {
  std::vector<FunctionVector> out;
  search_compatible(s, s.topology().all(), budget, [&](const FunctionVector& f) {
    if (out.size() >= budget.carrier_limit) throw BudgetError("too many compatible functions");
    out.push_back(f);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FunctionVector> ccomp(const UnaryConstrainedSpace& s, const Budget& budget) {
  std::vector<FunctionVector> out;
  if (!s.empty_nonempty()) return out;
  const std::size_t n = s.size();
  FunctionVector f(n, 0);
  std::size_t nodes = 0;
  std::function<void(std::size_t)> go = [&](std::size_t x) {
    if (x == n) {
      if (out.size() >= budget.carrier_limit) throw BudgetError("too many compatible functions");
      out.push_back(f);
      return;
    }
    for (Elem a : s.at(x)) {
      if (++nodes > budget.closure_limit) {
        throw BudgetError("compatible-function search exceeds the budget");
      }
      bool ok = true;
      for (std::size_t p = 0; p < x && ok; ++p) {
        if ((s.equivalent(x, p) || tied(s.topology(), x, p)) && f[p] != a) ok = false;
      }
      if (!ok) continue;
      f[x] = a;
      go(x + 1);
    }
  };
  go(0);
  return out;
}

LSpace func(const ConstrainedSpace& s, const Budget& budget) {
  return LSpace(s.topology(), s.dualizer(), ccomp(s, budget));
}

LSpace func(const UnaryConstrainedSpace& s, const Budget& budget) {
  return LSpace(s.topology(), s.dualizer(), ccomp(s, budget));
}

ConstrainedSpace cons(const LSpace& x, std::size_t k) {
  ConstraintMap m;
  for (PointSet i : subsets_up_to(x.size(), k)) m[i] = project(x.comp(), members(i));
  return ConstrainedSpace(x.topology(), x.dualizer(), k, std::move(m));
}

UnaryConstrainedSpace cons_unary(const LSpace& x) {
  const std::size_t n = x.size();
  std::vector<ElementSet> per_point;
  std::map<std::vector<Elem>, std::size_t> cls;
  std::vector<std::size_t> label(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<Elem> col;
    for (const auto& f : x.comp()) col.push_back(f[p]);
    std::set<Elem> vals(col.begin(), col.end());
    per_point.emplace_back(vals.begin(), vals.end());
    label[p] = cls.emplace(col, cls.size()).first->second;
  }
  return UnaryConstrainedSpace(x.topology(), x.dualizer(), !x.comp().empty(), std::move(per_point),
                               std::move(label));
}

std::vector<LocalFunction> compatible_on(const ConstrainedSpace& s, PointSet i,
                                         const Budget& budget) {
  std::vector<LocalFunction> out;
  auto pts = members(i);
  search_compatible(s, i, budget, [&](const FunctionVector& f) {
    out.push_back({i, restrict_to(f, pts)});
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_compatible(const ConstrainedSpace& s, const LocalFunction& g) {
  auto pts = members(g.domain);
  if (g.values.size() != pts.size() || (g.domain & ~s.topology().all()) != 0) return false;
  FunctionVector full(s.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (g.values[i] >= s.dualizer().size()) return false;
    full[pts[i]] = g.values[i];
  }
  if (!continuous_on(s.topology(), g.domain, full)) return false;
  for (PointSet sub : subsets_up_to(pts.size(), s.arity())) {
    PointSet j = 0;
    for (std::size_t u : members(sub)) j |= singleton(pts[u]);
    if (!s.allows_restriction(j, full)) return false;
  }
  return true;
}

// ---- extension properties ----

GlobalExtension has_global_extension(const ConstrainedSpace& s, const Budget& budget) {
  GlobalExtension out;
  auto c = ccomp(s, budget);
  out.ccomp_size = c.size();
  for (PointSet i : subsets_up_to(s.size(), s.arity())) {
    auto pts = members(i);
    auto proj = project(c, pts);
    const auto& a = s.at(i);
    if (proj.size() == a.size()) continue;
    for (const auto& g : a) {
      if (!std::binary_search(proj.begin(), proj.end(), g)) {
        out.holds = false;
        out.witness = LocalFunction{i, g};
        return out;
      }
    }
  }
  return out;
}

GlobalExtension has_global_extension(const UnaryConstrainedSpace& s, const Budget& budget) {
  GlobalExtension out;
  auto c = ccomp(s, budget);
  out.ccomp_size = c.size();
  if (s.empty_nonempty() && c.empty()) {
    out.holds = false;
    out.witness = LocalFunction{0, {}};
    return out;
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (Elem a : s.at(x)) {
      if (std::none_of(c.begin(), c.end(), [&](const FunctionVector& f) { return f[x] == a; })) {
        out.holds = false;
        out.witness = LocalFunction{singleton(x), {a}};
        return out;
      }
    }
  }
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (std::size_t y = x + 1; y < s.size(); ++y) {
      if (s.equivalent(x, y)) continue;
      if (std::none_of(c.begin(), c.end(), [&](const FunctionVector& f) { return f[x] != f[y]; })) {
        out.holds = false;
        out.unseparated = std::make_pair(x, y);
        return out;
      }
    }
  }
  return out;
}

LocalExtension has_local_extension(const ConstrainedSpace& s, std::size_t n, const Budget& budget) {
  LocalExtension out;
  const std::size_t size = s.size();
  for (PointSet i : subsets_up_to(size, n)) {
    if (cardinality(i) == size) continue;
    for (const auto& g : compatible_on(s, i, budget)) {
      for (std::size_t y = 0; y < size; ++y) {
        if (contains(i, y)) continue;
        if (extensions_of(s, g, y).empty()) {
          out.holds = false;
          out.witness = g;
          out.point = y;
          return out;
        }
      }
    }
  }
  return out;
}

ElementSet possible_extensions(const ConstrainedSpace& s, const LocalFunction& f, std::size_t y) {
  if (y >= s.size() || contains(f.domain, y)) throw InputError("extension point must be a new point");
  if (!is_compatible(s, f)) throw InputError("local function is not compatible");
  return extensions_of(s, f, y);
}

LocalToGlobalReport local_to_global_verify(const ConstrainedSpace& s, const TermFunction& m,
                                           const Budget& budget) {
  const std::size_t k = s.arity();
  if (m.arity != k + 1) throw InputError("NU operation must have arity k + 1");
  if (!check_near_unanimity(s.dualizer(), m).holds) throw InputError("operation is not near-unanimity");
  LocalToGlobalReport r;
  r.lep_arity = k * (k - 1);
  r.lep = has_local_extension(s, r.lep_arity, budget).holds;
  r.gep = has_global_extension(s, budget).holds;
  const std::size_t n = s.size();
  if (n == 0) return r;
  for (PointSet i : subsets_up_to(n, std::min(r.lep_arity, n - 1))) {
    for (const auto& f : compatible_on(s, i, budget)) {
      for (std::size_t y = 0; y < n; ++y) {
        if (contains(i, y)) continue;
        ++r.convexity_checked;
        ElementSet amb = first_coordinates(s.at(singleton(y)));
        if (!is_convex(s.dualizer(), m, extensions_of(s, f, y), amb)) {
          r.nonconvex = std::make_pair(f, y);
          return r;
        }
      }
    }
  }
  return r;
}

// ---- morphisms and translations ----

bool is_constrained_map(const std::vector<std::size_t>& phi, const ConstrainedSpace& x,
                        const ConstrainedSpace& y) {
  if (x.arity() != y.arity() || !(x.dualizer() == y.dualizer())) {
    throw InputError("constrained maps need the same dualizer and arity");
  }
  if (phi.size() != x.size()) return false;
  for (std::size_t p : phi) {
    if (p >= y.size()) return false;
  }
  if (!is_continuous(x.topology(), y.topology(), phi)) return false;
  for (PointSet i : subsets_up_to(x.size(), x.arity())) {
    auto pts = members(i);
    PointSet j = 0;
    for (std::size_t p : pts) j |= singleton(phi[p]);
    auto jpts = members(j);
    std::vector<std::size_t> pos;
    for (std::size_t p : pts) {
      pos.push_back(static_cast<std::size_t>(std::lower_bound(jpts.begin(), jpts.end(), phi[p]) - jpts.begin()));
    }
    for (const auto& g : y.at(j)) {
      if (!x.allows(i, restrict_to(g, pos))) return false;
    }
  }
  return true;
}

bool is_constrained_map(const std::vector<std::size_t>& phi, const UnaryConstrainedSpace& x,
                        const UnaryConstrainedSpace& y) {
  if (!(x.dualizer() == y.dualizer())) throw InputError("constrained maps need the same dualizer");
  if (phi.size() != x.size()) return false;
  for (std::size_t p : phi) {
    if (p >= y.size()) return false;
  }
  if (!is_continuous(x.topology(), y.topology(), phi)) return false;
  if (y.empty_nonempty() && !x.empty_nonempty()) return false;
  for (std::size_t p = 0; p < x.size(); ++p) {
    const auto& b = y.at(phi[p]);
    if (!std::includes(x.at(p).begin(), x.at(p).end(), b.begin(), b.end())) return false;
    for (std::size_t q = p + 1; q < x.size(); ++q) {
      if (x.equivalent(p, q) && !y.equivalent(phi[p], phi[q])) return false;
    }
  }
  return true;
}

ConstrainedSpace unary_to_binary(const UnaryConstrainedSpace& s) {
  ConstraintMap m;
  m[0] = s.empty_nonempty() ? std::vector<FunctionVector>{FunctionVector{}}
                            : std::vector<FunctionVector>{};
  for (std::size_t x = 0; x < s.size(); ++x) {
    for (Elem a : s.at(x)) m[singleton(x)].push_back({a});
    m[singleton(x)];  // present even when A_x is empty
    for (std::size_t y = x + 1; y < s.size(); ++y) {
      auto& a = m[singleton(x) | singleton(y)];
      if (s.equivalent(x, y)) {
        for (Elem e : s.at(x)) a.push_back({e, e});
      } else {
        a = product_of({s.at(x), s.at(y)});
      }
    }
  }
  return ConstrainedSpace(s.topology(), s.dualizer(), 2, std::move(m));
}

UnaryConstrainedSpace binary_to_unary(const ConstrainedSpace& s) {
  if (s.arity() != 2) throw InputError("only binary constrained spaces translate to unary ones");
  const std::size_t n = s.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    rel[x][x] = true;
    for (std::size_t y = x + 1; y < n; ++y) {
      SquareKind kind = classify_pairs(s.at(singleton(x) | singleton(y)));
      if (kind == SquareKind::other) {
        throw InputError("A_{" + std::to_string(x) + "," + std::to_string(y) +
                         "} is neither a subdiagonal nor a product");
      }
      rel[x][y] = rel[y][x] = kind == SquareKind::subdiagonal;
    }
  }
  std::vector<std::size_t> label(n);
  for (std::size_t x = 0; x < n; ++x) {
    label[x] = x;
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (rel[x][y] && rel[y][z] && !rel[x][z]) {
          throw InputError("subdiagonal pairs do not form an equivalence at " + std::to_string(x) +
                           "," + std::to_string(y) + "," + std::to_string(z));
        }
      }
      if (rel[x][y] && y < label[x]) label[x] = y;
    }
  }
  std::vector<ElementSet> per_point;
  for (std::size_t x = 0; x < n; ++x) per_point.push_back(first_coordinates(s.at(singleton(x))));
  return UnaryConstrainedSpace(s.topology(), s.dualizer(), !s.at(0).empty(), std::move(per_point),
                               std::move(label));
}

// ---- 2_DL ----

bool is_reflexive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x) {
    if (!contains(r[x], x)) return false;
  }
  return true;
}

bool is_transitive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x) {
    for (std::size_t y : members(r[x])) {
      if ((r[y] & ~r[x]) != 0) return false;
    }
  }
  return true;
}

bool is_antisymmetric(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x) {
    for (std::size_t y : members(r[x])) {
      if (y != x && contains(r[y], x)) return false;
    }
  }
  return true;
}

ConstrainedSpace priestley_space(const FiniteTopology& topology, const Relation& leq) {
  const std::size_t n = topology.size();
  if (leq.size() != n) throw InputError("relation size differs from point count");
  if (!is_reflexive(leq)) throw InputError("order relation must be reflexive");
  ConstraintMap m;
  m[0] = {FunctionVector{}};
  for (std::size_t x = 0; x < n; ++x) {
    m[singleton(x)] = {{0}, {1}};
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<FunctionVector> a{{0, 0}, {1, 1}};
      if (!contains(leq[y], x)) a.push_back({0, 1});
      if (!contains(leq[x], y)) a.push_back({1, 0});
      m[singleton(x) | singleton(y)] = std::move(a);
    }
  }
  return ConstrainedSpace(topology, catalog::dl2(), 2, std::move(m));
}

Relation priestley_order(const ConstrainedSpace& s) {
  if (s.dualizer().size() != 2 || s.arity() != 2) {
    throw InputError("order extraction needs a binary space over a two-element dualizer");
  }
  Relation r(s.size(), 0);
  for (std::size_t x = 0; x < s.size(); ++x) {
    r[x] |= singleton(x);
    for (std::size_t y = 0; y < s.size(); ++y) {
      if (x != y && !oriented(s, x, y).count({1, 0})) r[x] |= singleton(y);
    }
  }
  return r;
}

bool priestley_separated(const FiniteTopology& topology, const Relation& leq) {
  const std::size_t n = topology.size();
  if (leq.size() != n) throw InputError("relation size differs from point count");
  for (std::size_t x = 0; x < n; ++x) {
    // smallest clopen up-set containing x
    PointSet s = singleton(x), prev = 0;
    while (s != prev) {
      prev = s;
      for (std::size_t p : members(prev)) {
        s |= leq[p] | topology.neighbourhood(p);
        for (std::size_t q = 0; q < n; ++q) {
          if (contains(topology.neighbourhood(q), p)) s |= singleton(q);
        }
      }
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (!contains(leq[x], y) && contains(s, y)) return false;
    }
  }
  return true;
}

// ---- positive MV chains ----

MvPriestleyReport mv_priestley_validate(const ConstrainedSpace& s, const Budget& budget) {
  const FiniteAlgebra& l = s.dualizer();
  const Signature& sig = l.signature();
  if (s.arity() != 2 || !sig.find("oplus") || !sig.find("odot") || !sig.find("meet") ||
      sig.find("neg")) {
    throw InputError("MV-Priestley checks need a binary space over a positive MV chain");
  }
  for (Elem a = 0; a < l.size(); ++a) {
    for (Elem b = 0; b < l.size(); ++b) {
      if (!l.leq(a, b) && !l.leq(b, a)) throw InputError("dualizer is not a chain");
    }
  }
  const std::size_t n = s.size();
  auto pt = [](std::size_t x) { return std::to_string(x); };
  MvPriestleyReport r;

  r.order.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    r.order[x] |= singleton(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      auto o = oriented(s, x, y);
      if (std::all_of(o.begin(), o.end(), [&](const auto& p) { return l.leq(p.first, p.second); })) {
        r.order[x] |= singleton(y);
      }
    }
  }
  auto le = [&](std::size_t x, std::size_t y) { return contains(r.order[x], y); };
  auto lt = [&](std::size_t x, std::size_t y) { return x != y && le(x, y); };
  auto par = [&](std::size_t x, std::size_t y) { return !le(x, y) && !le(y, x); };
  r.partial_order = is_antisymmetric(r.order) && is_transitive(r.order);

  std::vector<ElementSet> ax;
  for (std::size_t x = 0; x < n; ++x) ax.push_back(first_coordinates(s.at(singleton(x))));

  r.incomparable_are_products = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (par(x, y) && s.at(singleton(x) | singleton(y)) != product_of({ax[x], ax[y]})) {
        r.incomparable_are_products = false;
      }
    }
  }
  r.continuous = validate_constrained(s, budget).continuous;

  r.subdirect.passed = r.diagonal.passed = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      auto o = oriented(s, x, y);
      if (le(x, y) && r.subdirect.passed) {
        std::set<Elem> first, second;
        for (const auto& [a, b] : o) {
          first.insert(a);
          second.insert(b);
        }
        if (ElementSet(first.begin(), first.end()) != ax[x] ||
            ElementSet(second.begin(), second.end()) != ax[y]) {
          r.subdirect.passed = false;
          r.subdirect.witness = pt(x) + " <= " + pt(y);
        }
      }
      if (x < y && r.diagonal.passed &&
          std::all_of(o.begin(), o.end(), [](const auto& p) { return p.first == p.second; })) {
        r.diagonal.passed = false;
        r.diagonal.witness = pt(x) + ", " + pt(y);
      }
    }
  }

  // Compatible in the order sense: f(x) in A_x, continuous, and the pair on
  // every u < v lies in A_{u,v}.
  std::vector<FunctionVector> compat;
  {
    FunctionVector f(n, 0);
    std::size_t nodes = 0;
    std::function<void(std::size_t)> go = [&](std::size_t x) {
      if (x == n) {
        compat.push_back(f);
        return;
      }
      for (Elem a : ax[x]) {
        if (++nodes > budget.closure_limit) throw BudgetError("MV-Priestley search exceeds the budget");
        f[x] = a;
        bool ok = true;
        for (std::size_t u = 0; u < x && ok; ++u) {
          if (tied(s.topology(), x, u) && f[u] != a) ok = false;
          if (ok && (le(u, x) || le(x, u)) && !oriented(s, u, x).count({f[u], a})) ok = false;
        }
        if (ok) go(x + 1);
      }
    };
    go(0);
  }
  r.extension.passed = true;
  for (std::size_t x = 0; x < n && r.extension.passed; ++x) {
    for (std::size_t y = 0; y < n && r.extension.passed; ++y) {
      if (!le(x, y)) continue;
      std::set<std::pair<Elem, Elem>> pairs;
      if (x == y) {
        for (Elem a : ax[x]) pairs.emplace(a, a);
      } else {
        pairs = oriented(s, x, y);
      }
      for (const auto& [a, b] : pairs) {
        if (std::none_of(compat.begin(), compat.end(),
                         [&](const FunctionVector& f) { return f[x] == a && f[y] == b; })) {
          r.extension.passed = false;
          r.extension.witness = "(" + l.label(a) + "," + l.label(b) + ") at " + pt(x) + " <= " + pt(y);
          break;
        }
      }
    }
  }
  r.mv_priestley = r.partial_order && r.incomparable_are_products && r.continuous &&
                   r.subdirect.passed && r.diagonal.passed && r.extension.passed;
  r.generic = validate_constrained(s, budget).ok() && has_global_extension(s, budget).holds;

  // (a,b) in B_{x,y} extends through z, for the five order configurations.
  auto b_pairs = [&](std::size_t x, std::size_t y) {
    if (!par(x, y)) return oriented(s, x, y);
    std::set<std::pair<Elem, Elem>> out;
    for (Elem a : ax[x]) {
      for (Elem b : ax[y]) out.emplace(a, b);
    }
    return out;
  };
  r.five_case.passed = true;
  for (std::size_t x = 0; x < n && r.five_case.passed; ++x) {
    for (std::size_t y = 0; y < n && r.five_case.passed; ++y) {
      for (std::size_t z = 0; z < n && r.five_case.passed; ++z) {
        if (x == y || y == z || x == z) continue;
        int c = 0;
        if (lt(x, z) && lt(z, y)) c = 1;
        else if (lt(x, y) && lt(y, z)) c = 2;
        else if (lt(z, y) && lt(y, x)) c = 3;
        else if (lt(x, z) && lt(y, z) && par(x, y)) c = 4;
        else if (lt(z, x) && lt(z, y) && par(x, y)) c = 5;
        if (c == 0) continue;
        auto xz = oriented(s, x, z);
        auto zy = oriented(s, z, y);
        for (const auto& [a, b] : b_pairs(x, y)) {
          bool found = false;
          for (Elem cv : ax[z]) {
            if (xz.count({a, cv}) && zy.count({cv, b})) found = true;
          }
          if (!found) {
            r.five_case.passed = false;
            r.five_case.witness = "case " + std::to_string(c) + " at " + pt(x) + "," + pt(y) + "," +
                                  pt(z) + " with (" + l.label(a) + "," + l.label(b) + ")";
            break;
          }
        }
      }
    }
  }
  r.lep2 = has_local_extension(s, 2, budget).holds;
  return r;
}

}  // namespace natdual
