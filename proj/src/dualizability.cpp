#include "natdual/dualizability.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "natdual/subpower.hpp"

namespace natdual {

PartialEndoReport partial_endomorphisms(const FiniteAlgebra& l) {
  PartialEndoReport out;
  for (const auto& c : enumerate_subuniverses(l)) {
    FiniteAlgebra sub = induced_subalgebra(l, c);
    for (const auto& h : enumerate_homs(sub, l)) {
      PartialEndomorphism e{c, h.values, h.values == c};
      if (!e.trivial && !out.witness) out.witness = e;
      out.all_trivial = out.all_trivial && e.trivial;
      out.endos.push_back(std::move(e));
    }
  }
  return out;
}

std::string_view to_string(SquareKind k) {
  switch (k) {
    case SquareKind::subdiagonal:
      return "subdiagonal";
    case SquareKind::product:
      return "product";
    case SquareKind::other:
      return "other";
  }
  return "other";
}

SquareKind classify_pairs(const std::vector<FunctionVector>& pairs) {
  if (std::all_of(pairs.begin(), pairs.end(), [](const FunctionVector& p) { return p[0] == p[1]; })) {
    return SquareKind::subdiagonal;
  }
  std::set<Elem> first, second;
  for (const auto& p : pairs) {
    first.insert(p[0]);
    second.insert(p[1]);
  }
  std::set<FunctionVector> distinct(pairs.begin(), pairs.end());
  return distinct.size() == first.size() * second.size() ? SquareKind::product : SquareKind::other;
}

SquareClassification classify_square_subalgebras(const FiniteAlgebra& l) {
  SquareClassification out;
  for (const auto& s : enumerate_subuniverses(direct_power(l, 2))) {
    SquareSubalgebra sub;
    for (Elem code : s) sub.pairs.push_back(decode(code, l.size(), 2));
    sub.kind = classify_pairs(sub.pairs);
    if (sub.kind == SquareKind::other) out.only_subdiagonal_or_product = false;
    out.subalgebras.push_back(std::move(sub));
  }
  return out;
}

namespace {

bool agrees_on(const FunctionVector& g, const FunctionVector& f, PointSet s) {
  for (std::size_t x : members(s)) {
    if (g[x] != f[x]) return false;
  }
  return true;
}

bool is_separated(const std::vector<FunctionVector>& a, std::size_t points) {
  for (std::size_t x = 0; x < points; ++x) {
    for (std::size_t y = x + 1; y < points; ++y) {
      if (std::none_of(a.begin(), a.end(), [&](const FunctionVector& g) { return g[x] != g[y]; })) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

InterpolationResult is_k_interpolated(const std::vector<FunctionVector>& a, const FunctionVector& f,
                                      std::size_t k) {
  for (PointSet s : subsets_up_to(f.size(), k)) {
    if (std::none_of(a.begin(), a.end(), [&](const FunctionVector& g) { return agrees_on(g, f, s); })) {
      return {false, s};
    }
  }
  return {};
}

bool separates_at_most(const std::vector<FunctionVector>& a, const FunctionVector& f) {
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = x + 1; y < f.size(); ++y) {
      if (f[x] == f[y]) continue;
      if (std::none_of(a.begin(), a.end(), [&](const FunctionVector& g) { return g[x] != g[y]; })) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Tests one A <= L^X; fills the counterexample if some f outside A is
// k-interpolated. Returns whether A counted as an instance.
bool bp_instance(const FiniteAlgebra& l, std::size_t k, std::size_t points,
                 const std::vector<FunctionVector>& a, const Budget& budget,
                 std::optional<BpCounterexample>& found) {
  if (k >= 2 && !is_separated(a, points)) return false;
  for (const auto& f : all_functions(l.size(), points, budget)) {
    if (std::binary_search(a.begin(), a.end(), f)) continue;
    if (k == 1 && !separates_at_most(a, f)) continue;
    if (is_k_interpolated(a, f, k).interpolated) {
      found = BpCounterexample{points, a, f};
      return true;
    }
  }
  return true;
}

}  // namespace

BpReport check_finite_bp(const FiniteAlgebra& l, std::size_t k, std::size_t bound,
                         BpStrategy strategy, std::uint64_t seed, std::size_t samples,
                         const Budget& budget) {
  if (k == 0) throw InputError("BP arity must be at least 1");
  BpReport out;
  auto consider = [&](std::size_t points, const std::vector<FunctionVector>& a) {
    std::optional<BpCounterexample> found;
    if (bp_instance(l, k, points, a, budget, found)) ++out.instances;
    if (found) {
      out.holds = false;
      out.counterexample = std::move(found);
      return false;
    }
    return true;
  };
  if (strategy == BpStrategy::exhaustive) {
    for (std::size_t points = 0; points <= bound; ++points) {
      FiniteAlgebra power = direct_power(l, points, budget);
      for (const auto& s : enumerate_subuniverses(power, budget)) {
        std::vector<FunctionVector> a;
        for (Elem code : s) a.push_back(decode(code, l.size(), points));
        if (!consider(points, a)) return out;
      }
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_points(1, std::max<std::size_t>(bound, 1));
  std::uniform_int_distribution<std::size_t> pick_seeds(1, 3);
  std::uniform_int_distribution<Elem> pick_value(0, static_cast<Elem>(l.size() - 1));
  // Draw until `samples` qualifying instances were tested.
  for (std::size_t i = 0; out.instances < samples && i < 20 * samples; ++i) {
    std::size_t points = pick_points(rng);
    std::vector<FunctionVector> seeds(pick_seeds(rng), FunctionVector(points));
    for (auto& s : seeds) {
      for (auto& e : s) e = pick_value(rng);
    }
    if (!consider(points, generate_subpower(l, points, seeds, budget))) return out;
  }
  return out;
}

UnaryBpReport check_unary_bp_via_classification(const FiniteAlgebra& l) {
  UnaryBpReport out;
  out.binary_via_nu = search_nu_function(l, 3).has_value();
  if (out.binary_via_nu) {
    out.binary_bp = true;
  } else {
    bool small = l.size() <= 2;
    out.binary_bp = check_finite_bp(l, 2, 3, small ? BpStrategy::exhaustive : BpStrategy::sampled)
                        .holds;
  }
  out.square_flag = classify_square_subalgebras(l).only_subdiagonal_or_product;
  out.unary_bp = out.binary_bp && out.square_flag;
  return out;
}

namespace {

std::optional<Elem> solve(const FiniteAlgebra& a, const std::vector<CrtEquation>& system,
                          const std::vector<std::size_t>& which) {
  for (Elem x = 0; x < a.size(); ++x) {
    if (std::all_of(which.begin(), which.end(), [&](std::size_t i) {
          return system[i].theta.related(x, system[i].a);
        })) {
      return x;
    }
  }
  return std::nullopt;
}

CrtResult crt_unchecked(const FiniteAlgebra& a, std::size_t k,
                        const std::vector<CrtEquation>& system) {
  CrtResult out;
  out.premise = true;
  std::vector<std::size_t> which;
  for (PointSet s : subsets_up_to(system.size(), k)) {
    if (s == 0) continue;
    which.clear();
    for (std::size_t i : members(s)) which.push_back(i);
    if (!solve(a, system, which)) {
      out.premise = false;
      break;
    }
  }
  which.resize(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) which[i] = i;
  out.solution = solve(a, system, which);
  out.solvable = out.solution.has_value();
  return out;
}

}  // namespace

CrtResult chinese_remainder_check(const FiniteAlgebra& a, const FiniteAlgebra& l, std::size_t k,
                                  const std::vector<CrtEquation>& system) {
  if (system.size() > kMaxPoints) throw BudgetError("too many equations");
  for (const auto& eq : system) {
    if (eq.a >= a.size()) throw InputError("equation element outside the algebra");
    if (!is_congruence(a, eq.theta)) throw InputError("equation uses a non-congruence");
    if (!in_prevariety(quotient(a, eq.theta), l)) {
      throw InputError("equation uses a congruence that is not relative to ISP(L)");
    }
  }
  return crt_unchecked(a, k, system);
}

CrtSweep chinese_remainder_sweep(const FiniteAlgebra& a, const FiniteAlgebra& l, std::size_t k,
                                 std::size_t max_equations) {
  auto rel = relative_congruences(a, l);
  std::vector<CrtEquation> eqs;
  for (Elem x = 0; x < a.size(); ++x) {
    for (const auto& t : rel) {
      // one representative per class is enough
      if (t.representatives()[t.block(x)] == x) eqs.push_back({x, t});
    }
  }
  CrtSweep out;
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
    if (!idx.empty()) {
      std::vector<CrtEquation> system;
      for (std::size_t i : idx) system.push_back(eqs[i]);
      ++out.systems;
      if (!crt_unchecked(a, k, system).holds()) {
        out.counterexample = system;
        return false;
      }
    }
    if (left == 0) return true;
    for (std::size_t i = start; i < eqs.size(); ++i) {
      idx.push_back(i);
      bool go = rec(i + 1, left - 1);
      idx.pop_back();
      if (!go) return false;
    }
    return true;
  };
  rec(0, max_equations);
  return out;
}

std::vector<Cover> all_covers(std::size_t n, std::size_t max_parts) {
  if (n > 5) throw BudgetError("cover enumeration is limited to 5 points");
  std::vector<Cover> out;
  if (n == 0) return {Cover{}};
  const PointSet everything = (PointSet{1} << n) - 1;
  Cover cur;
  std::function<void(PointSet)> rec = [&](PointSet next) {
    PointSet u = 0;
    for (PointSet s : cur) u |= s;
    if (!cur.empty() && u == everything) out.push_back(cur);
    if (cur.size() == max_parts) return;
    for (PointSet s = next; s <= everything; ++s) {
      cur.push_back(s);
      rec(s + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

JonssonReport jonsson_finite_cover_check(const FiniteAlgebra& l, std::size_t points,
                                         const std::vector<FunctionVector>& a,
                                         const std::vector<Cover>& covers) {
  const PointSet everything = points == 64 ? ~PointSet{0} : (PointSet{1} << points) - 1;
  for (const auto& c : covers) {
    PointSet u = 0;
    for (PointSet s : c) u |= s;
    if (u != everything) throw InputError("family does not cover the points");
  }
  FiniteAlgebra alg = subpower_algebra(l, a);
  auto homs = enumerate_homs(alg, l);
  JonssonReport out;
  for (std::size_t ci = 0; ci < covers.size(); ++ci) {
    for (std::size_t hi = 0; hi < homs.size(); ++hi) {
      ++out.checked;
      bool factors = false;
      for (PointSet part : covers[ci]) {
        std::vector<std::size_t> coords = members(part);
        std::map<FunctionVector, Elem> value;
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
          auto [it, fresh] = value.emplace(restrict_to(a[i], coords), homs[hi](static_cast<Elem>(i)));
          if (!fresh && it->second != homs[hi](static_cast<Elem>(i))) ok = false;
        }
        if (ok) {
          factors = true;
          break;
        }
      }
      if (!factors) {
        out.holds = false;
        out.failing_hom = hi;
        out.failing_cover = ci;
        return out;
      }
    }
  }
  return out;
}

Congruence relative_join(const std::vector<Congruence>& family, const Congruence& x,
                         const Congruence& y) {
  std::optional<Congruence> best;
  for (const auto& z : family) {
    if (x.leq(z) && y.leq(z)) best = best ? best->meet(z) : z;
  }
  if (!best) throw InputError("no member of the family lies above both");
  return *best;
}

bool is_distributive(const std::vector<Congruence>& family) {
  for (const auto& a : family) {
    for (const auto& b : family) {
      for (const auto& c : family) {
        Congruence lhs = a.meet(relative_join(family, b, c));
        Congruence rhs = relative_join(family, a.meet(b), a.meet(c));
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

bool AntiIsoReport::holds() const {
  return std::all_of(preconditions.begin(), preconditions.end(),
                     [](const Check& c) { return c.passed; }) &&
         bijective && order_reversing;
}

AntiIsoReport congruence_spectrum_antiisomorphism(const FiniteAlgebra& a, const FiniteAlgebra& l) {
  AntiIsoReport out;
  auto rel = relative_congruences(a, l);
  out.relative_congruences = rel.size();
  out.preconditions.push_back({"in_isp", in_prevariety(a, l), ""});
  auto endo = partial_endomorphisms(l);
  out.preconditions.push_back({"trivial_partial_endomorphisms", endo.all_trivial, ""});
  out.preconditions.push_back({"relative_congruences_distributive", is_distributive(rel), ""});

  auto spec = spectrum(a, l);
  std::size_t s = spec.points.size();
  out.spectrum_size = s;
  if (s > 16) throw BudgetError("spectrum too large for subset enumeration");
  std::vector<Congruence> theta;
  for (PointSet y = 0; y < (PointSet{1} << s); ++y) {
    std::vector<std::size_t> label(a.size());
    std::map<std::vector<Elem>, std::size_t> cls;
    for (Elem x = 0; x < a.size(); ++x) {
      std::vector<Elem> prof;
      for (std::size_t p : members(y)) prof.push_back(spec.points[p](x));
      label[x] = cls.emplace(prof, cls.size()).first->second;
    }
    theta.emplace_back(label);
  }
  std::set<Congruence> image(theta.begin(), theta.end());
  bool into = std::all_of(theta.begin(), theta.end(), [&](const Congruence& t) {
    return std::binary_search(rel.begin(), rel.end(), t);
  });
  out.bijective = into && image.size() == theta.size() && image.size() == rel.size();
  out.order_reversing = true;
  for (PointSet y = 0; y < theta.size() && out.order_reversing; ++y) {
    for (PointSet z = 0; z < theta.size(); ++z) {
      bool subset = (y & ~z) == 0;
      if (subset != theta[z].leq(theta[y])) {
        out.order_reversing = false;
        break;
      }
    }
  }
  return out;
}

HellyResult helly_check(const FiniteAlgebra& l, const TermFunction& m,
                        const std::vector<ElementSet>& family) {
  HellyResult out;
  if (!check_near_unanimity(l, m).holds) throw InputError("Helly needs an NU operation");
  const std::size_t k = m.arity - 1;
  if (family.size() > 20) throw BudgetError("family too large");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!is_convex(l, m, family[i])) {
      out.premise_failure = "set " + std::to_string(i) + " is not convex";
      return out;
    }
  }
  auto intersection = [&](PointSet idx) {
    std::vector<bool> in(l.size(), true);
    for (std::size_t i : members(idx)) {
      std::vector<bool> here(l.size(), false);
      for (Elem e : family[i]) here[e] = true;
      for (Elem e = 0; e < l.size(); ++e) in[e] = in[e] && here[e];
    }
    ElementSet s;
    for (Elem e = 0; e < l.size(); ++e) {
      if (in[e]) s.push_back(e);
    }
    return s;
  };
  for (PointSet s : subsets_up_to(family.size(), k)) {
    if (intersection(s).empty()) {
      out.premise_failure = "some " + std::to_string(cardinality(s)) + " of the sets do not meet";
      return out;
    }
  }
  out.premise = true;
  // Induction on the number of sets: drop each of k+1 sets in turn, recurse,
  // and combine the k+1 points with m.
  std::map<PointSet, Elem> memo;
  std::function<Elem(PointSet)> point = [&](PointSet idx) -> Elem {
    if (auto it = memo.find(idx); it != memo.end()) return it->second;
    Elem r;
    if (cardinality(idx) <= k) {
      r = intersection(idx).front();
    } else {
      auto ms = members(idx);
      std::vector<Elem> args;
      for (std::size_t j = 0; j <= k; ++j) args.push_back(point(idx & ~singleton(ms[j])));
      r = m.at(args, l.size());
    }
    memo.emplace(idx, r);
    return r;
  };
  const PointSet all = family.empty() ? 0 : (PointSet{1} << family.size()) - 1;
  out.point = point(all);
  auto meet = intersection(all);
  out.point_in_all = std::binary_search(meet.begin(), meet.end(), *out.point);
  return out;
}

}  // namespace natdual
