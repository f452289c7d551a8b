// L-spaces, the spectrum functor and the finite natural duality checks.
#pragma once

#include <string>

#include "natdual/congruence.hpp"
#include "natdual/topology.hpp"

namespace natdual {

// A finite space X with a distinguished subalgebra comp of continuous maps
// X -> L. comp is kept sorted.
class LSpace {
 public:
  LSpace() = default;
  LSpace(FiniteTopology topology, FiniteAlgebra dualizer, std::vector<FunctionVector> comp);

  std::size_t size() const { return topology_.size(); }
  const FiniteTopology& topology() const { return topology_; }
  const FiniteAlgebra& dualizer() const { return dualizer_; }
  const std::vector<FunctionVector>& comp() const { return comp_; }

  bool operator==(const LSpace&) const = default;

 private:
  FiniteTopology topology_;
  FiniteAlgebra dualizer_;
  std::vector<FunctionVector> comp_;
};

// An L-set: points plus a subalgebra of L^X, no topology.
struct LSet {
  std::size_t points = 0;
  FiniteAlgebra dualizer;
  std::vector<FunctionVector> comp;
};

// Comp X as an abstract algebra; element i is comp()[i].
FiniteAlgebra comp_algebra(const LSpace& x, const Budget& budget = {});

struct Check {
  std::string name;
  bool passed = false;
  std::string witness;
};

struct Spectrum {
  LSpace space;
  std::vector<ElementMap> points;  // point i is the homomorphism points[i]
};

// Hom(A, L) with the topology generated by {h : h(a) = b}; comp is the image
// of A under evaluation.
Spectrum spectrum(const FiniteAlgebra& a, const FiniteAlgebra& l);

// Spec h : Spec B -> Spec A, g |-> g o h, as a map on point indices.
std::vector<std::size_t> spectrum_map(const Spectrum& spec_a, const Spectrum& spec_b,
                                      const ElementMap& h);

struct CanonicalEmbedding {
  Spectrum spec;
  FiniteAlgebra comp;  // Comp Spec A
  ElementMap eta;      // A -> Comp Spec A
  bool injective = false;
  bool isomorphism = false;
};
CanonicalEmbedding canonical_embedding(const FiniteAlgebra& a, const FiniteAlgebra& l);

struct EvaluationMap {
  Spectrum spec;                 // Spec Comp X
  std::vector<std::size_t> ev;  // x |-> index of the projection at x
  bool injective = false;
  bool surjective = false;
  bool isomorphism = false;
};
EvaluationMap evaluation_map(const LSpace& x);

struct LMapCheck {
  bool continuous = false;
  bool reflects = false;  // g o phi in Comp X for every g in Comp Y
  bool ok() const { return continuous && reflects; }
};
LMapCheck check_lmap(const LSpace& x, const LSpace& y, const std::vector<std::size_t>& phi);

// Bijective, homeomorphic, and compatibility-reflecting in both directions.
bool is_lspace_isomorphism(const LSpace& x, const LSpace& y, const std::vector<std::size_t>& phi);

struct SpaceProperties {
  bool separated = false;
  bool full = false;
  bool completely_regular = false;
  bool compact = true;  // always, spaces are finite
  bool discrete = false;
};
SpaceProperties space_properties(const LSpace& x);

struct SeparatedQuotient {
  LSpace space;
  std::vector<std::size_t> map;
};
// X / (x ~ y iff all f in Comp X agree), with the quotient topology.
SeparatedQuotient separated_quotient(const LSpace& x);

// Topology generated by the fibers of the functions.
LSpace regularize(const LSet& s);
LSpace discretize(const LSet& s);

struct RoundtripReport {
  std::vector<Check> checks;
  bool ok() const;
};
RoundtripReport check_duality_roundtrip(const FiniteAlgebra& a, const FiniteAlgebra& l);
RoundtripReport check_duality_roundtrip(const LSpace& x);

// Comp(Spec h) o eta_A = eta_B o h.
Check check_naturality(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h,
                       const FiniteAlgebra& l);

}  // namespace natdual
