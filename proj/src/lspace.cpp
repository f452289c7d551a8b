#include "natdual/lspace.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "natdual/subpower.hpp"

namespace natdual {

namespace {

std::optional<std::size_t> index_in(const std::vector<FunctionVector>& sorted,
                                    const FunctionVector& f) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), f);
  if (it == sorted.end() || *it != f) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

FunctionVector compose(const FunctionVector& g, const std::vector<std::size_t>& phi) {
  FunctionVector out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x) out[x] = g[phi[x]];
  return out;
}

std::vector<FunctionVector> sorted_unique(std::vector<FunctionVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// The column of x: (f(x)) over f in comp.
std::vector<Elem> column(const LSpace& x, std::size_t p) {
  std::vector<Elem> c;
  for (const auto& f : x.comp()) c.push_back(f[p]);
  return c;
}

std::string point_name(std::size_t x) { return "x" + std::to_string(x); }

}  // namespace

LSpace::LSpace(FiniteTopology topology, FiniteAlgebra dualizer, std::vector<FunctionVector> comp)
    : topology_(std::move(topology)), dualizer_(std::move(dualizer)),
      comp_(sorted_unique(std::move(comp))) {
  for (const auto& f : comp_) {
    if (f.size() != topology_.size()) throw InputError("function length differs from point count");
    for (Elem e : f) {
      if (e >= dualizer_.size()) throw InputError("function value outside the dualizer");
    }
    if (!is_continuous_into_discrete(topology_, f)) {
      throw InputError("function " + format_vector(dualizer_, f) + " is not continuous");
    }
  }
  if (!is_subpower(dualizer_, topology_.size(), comp_)) {
    throw InputError("functions do not form a subalgebra of L^X");
  }
}

FiniteAlgebra comp_algebra(const LSpace& x, const Budget& budget) {
  return subpower_algebra(x.dualizer(), x.comp(), budget);
}

Spectrum spectrum(const FiniteAlgebra& a, const FiniteAlgebra& l) {
  auto homs = enumerate_homs(a, l);
  std::vector<PointSet> subbasis;
  for (Elem e = 0; e < a.size(); ++e) {
    for (Elem b = 0; b < l.size(); ++b) {
      PointSet s = 0;
      for (std::size_t i = 0; i < homs.size(); ++i) {
        if (homs[i](e) == b) s |= singleton(i);
      }
      subbasis.push_back(s);
    }
  }
  std::vector<FunctionVector> comp;
  for (Elem e = 0; e < a.size(); ++e) {
    FunctionVector f;
    for (const auto& h : homs) f.push_back(h(e));
    comp.push_back(std::move(f));
  }
  FiniteTopology top = FiniteTopology::generated(homs.size(), subbasis);
  return Spectrum{LSpace(std::move(top), l, std::move(comp)), std::move(homs)};
}

std::vector<std::size_t> spectrum_map(const Spectrum& spec_a, const Spectrum& spec_b,
                                      const ElementMap& h) {
  std::map<ElementMap, std::size_t> where;
  for (std::size_t i = 0; i < spec_a.points.size(); ++i) where.emplace(spec_a.points[i], i);
  std::vector<std::size_t> out;
  for (const auto& g : spec_b.points) {
    ElementMap gh;
    for (Elem x : h.values) gh.values.push_back(g(x));
    auto it = where.find(gh);
    if (it == where.end()) throw InputError("composite is not a point of the spectrum");
    out.push_back(it->second);
  }
  return out;
}

CanonicalEmbedding canonical_embedding(const FiniteAlgebra& a, const FiniteAlgebra& l) {
  CanonicalEmbedding out{spectrum(a, l), {}, {}, false, false};
  out.comp = comp_algebra(out.spec.space);
  const auto& comp = out.spec.space.comp();
  for (Elem e = 0; e < a.size(); ++e) {
    FunctionVector f;
    for (const auto& h : out.spec.points) f.push_back(h(e));
    out.eta.values.push_back(static_cast<Elem>(*index_in(comp, f)));
  }
  out.injective = std::set<Elem>(out.eta.values.begin(), out.eta.values.end()).size() == a.size();
  out.isomorphism = out.injective && out.comp.size() == a.size() &&
                    is_homomorphism(a, out.comp, out.eta);
  return out;
}

EvaluationMap evaluation_map(const LSpace& x) {
  FiniteAlgebra c = comp_algebra(x);
  EvaluationMap out{spectrum(c, x.dualizer()), {}, false, false, false};
  std::map<ElementMap, std::size_t> where;
  for (std::size_t i = 0; i < out.spec.points.size(); ++i) where.emplace(out.spec.points[i], i);
  for (std::size_t p = 0; p < x.size(); ++p) {
    ElementMap proj{column(x, p)};
    auto it = where.find(proj);
    if (it == where.end()) throw std::logic_error("projection is not a homomorphism");
    out.ev.push_back(it->second);
  }
  std::set<std::size_t> image(out.ev.begin(), out.ev.end());
  out.injective = image.size() == x.size();
  out.surjective = image.size() == out.spec.points.size();
  out.isomorphism = out.injective && out.surjective && is_lspace_isomorphism(x, out.spec.space, out.ev);
  return out;
}

LMapCheck check_lmap(const LSpace& x, const LSpace& y, const std::vector<std::size_t>& phi) {
  LMapCheck out;
  if (phi.size() != x.size()) return out;
  for (std::size_t p : phi) {
    if (p >= y.size()) return out;
  }
  out.continuous = is_continuous(x.topology(), y.topology(), phi);
  out.reflects = true;
  for (const auto& g : y.comp()) {
    if (!index_in(x.comp(), compose(g, phi))) {
      out.reflects = false;
      break;
    }
  }
  return out;
}

bool is_lspace_isomorphism(const LSpace& x, const LSpace& y, const std::vector<std::size_t>& phi) {
  if (phi.size() != x.size() || x.size() != y.size()) return false;
  std::vector<std::size_t> inv(y.size(), y.size());
  for (std::size_t p = 0; p < phi.size(); ++p) {
    if (phi[p] >= y.size() || inv[phi[p]] != y.size()) return false;
    inv[phi[p]] = p;
  }
  return check_lmap(x, y, phi).ok() && check_lmap(y, x, inv).ok();
}

SpaceProperties space_properties(const LSpace& x) {
  SpaceProperties out;
  std::set<std::vector<Elem>> cols;
  for (std::size_t p = 0; p < x.size(); ++p) cols.insert(column(x, p));
  out.separated = cols.size() == x.size();
  out.full = evaluation_map(x).surjective;
  LSpace reg = regularize(LSet{x.size(), x.dualizer(), x.comp()});
  out.completely_regular = reg.topology() == x.topology();
  out.discrete = x.topology().is_discrete();
  return out;
}

SeparatedQuotient separated_quotient(const LSpace& x) {
  std::map<std::vector<Elem>, std::size_t> cls;
  std::vector<std::size_t> label(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    label[p] = cls.emplace(column(x, p), cls.size()).first->second;
  }
  Congruence theta(label);
  std::vector<std::size_t> map(theta.blocks().begin(), theta.blocks().end());
  auto reps = theta.representatives();
  std::vector<FunctionVector> comp;
  for (const auto& f : x.comp()) {
    FunctionVector g;
    for (Elem r : reps) g.push_back(f[r]);
    comp.push_back(std::move(g));
  }
  FiniteTopology top = x.topology().quotient(map, theta.num_blocks());
  return {LSpace(std::move(top), x.dualizer(), std::move(comp)), std::move(map)};
}

LSpace regularize(const LSet& s) {
  std::vector<PointSet> fibers;
  for (const auto& f : s.comp) {
    if (f.size() != s.points) throw InputError("function length differs from point count");
    for (Elem a = 0; a < s.dualizer.size(); ++a) {
      PointSet fib = 0;
      for (std::size_t p = 0; p < s.points; ++p) {
        if (f[p] == a) fib |= singleton(p);
      }
      fibers.push_back(fib);
    }
  }
  return LSpace(FiniteTopology::generated(s.points, fibers), s.dualizer, s.comp);
}

LSpace discretize(const LSet& s) {
  return LSpace(FiniteTopology::discrete(s.points), s.dualizer, s.comp);
}

bool RoundtripReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

RoundtripReport check_duality_roundtrip(const FiniteAlgebra& a, const FiniteAlgebra& l) {
  RoundtripReport r;
  CanonicalEmbedding e = canonical_embedding(a, l);
  Check inj{"eta_injective", e.injective, ""};
  if (!e.injective) {
    for (Elem x = 0; x < a.size() && inj.witness.empty(); ++x) {
      for (Elem y = x + 1; y < a.size(); ++y) {
        if (e.eta(x) == e.eta(y)) {
          inj.witness = a.label(x) + " and " + a.label(y) + " are not separated by Hom(A,L)";
          break;
        }
      }
    }
  }
  r.checks.push_back(inj);
  r.checks.push_back({"eta_homomorphism", is_homomorphism(a, e.comp, e.eta), ""});
  r.checks.push_back({"eta_isomorphism", e.isomorphism, ""});
  r.checks.push_back({"spectrum_discrete", e.spec.space.topology().is_discrete(), ""});

  // Spec(eta_A) o ev_{Spec A} = id on Spec A.
  EvaluationMap ev = evaluation_map(e.spec.space);
  Check tri{"triangle_spec", true, ""};
  for (std::size_t h = 0; h < e.spec.points.size(); ++h) {
    const ElementMap& k = ev.spec.points[ev.ev[h]];
    for (Elem x = 0; x < a.size(); ++x) {
      if (k(e.eta(x)) != e.spec.points[h](x)) {
        tri.passed = false;
        tri.witness = "point " + point_name(h);
      }
    }
  }
  r.checks.push_back(tri);
  r.checks.push_back({"ev_spec_isomorphism", ev.isomorphism, ""});
  return r;
}

RoundtripReport check_duality_roundtrip(const LSpace& x) {
  RoundtripReport r;
  EvaluationMap ev = evaluation_map(x);
  Check inj{"ev_injective", ev.injective, ""};
  if (!ev.injective) inj.witness = "space is not separated";
  Check sur{"ev_surjective", ev.surjective, ""};
  if (!ev.surjective) sur.witness = "some homomorphism Comp X -> L is not an evaluation";
  r.checks.push_back(inj);
  r.checks.push_back(sur);
  r.checks.push_back({"ev_isomorphism", ev.isomorphism, ""});

  // eta_{Comp X}(f) o ev_X = f.
  Check tri{"triangle_comp", true, ""};
  for (std::size_t i = 0; i < x.comp().size(); ++i) {
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (ev.spec.points[ev.ev[p]](static_cast<Elem>(i)) != x.comp()[i][p]) {
        tri.passed = false;
        tri.witness = format_vector(x.dualizer(), x.comp()[i]);
      }
    }
  }
  r.checks.push_back(tri);
  return r;
}

Check check_naturality(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h,
                       const FiniteAlgebra& l) {
  if (!is_homomorphism(a, b, h)) throw InputError("naturality needs a homomorphism");
  Spectrum sa = spectrum(a, l), sb = spectrum(b, l);
  auto sh = spectrum_map(sa, sb, h);
  Check c{"naturality", true, ""};
  for (Elem x = 0; x < a.size(); ++x) {
    for (std::size_t j = 0; j < sb.points.size(); ++j) {
      // (eta_A(x) o Spec h)(g_j) versus eta_B(h(x))(g_j)
      if (sa.points[sh[j]](x) != sb.points[j](h(x))) {
        c.passed = false;
        c.witness = a.label(x);
      }
    }
  }
  return c;
}

}  // namespace natdual
