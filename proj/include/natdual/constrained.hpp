// Constrained spaces: a finite space with local constraints A_I <= L^I on
// small sets of points (k-ary form) or per-point subalgebras plus an
// equivalence (unary form). Compatible functions, Cons/Func, the global and
// local extension properties, and the 2_DL (Priestley) and positive MV
// dictionaries.
#pragma once

#include <map>
#include <optional>

#include "natdual/lspace.hpp"
#include "natdual/term.hpp"

namespace natdual {

// Restrictions to I are listed in ascending point order.
using ConstraintMap = std::map<PointSet, std::vector<FunctionVector>>;

// A function on a subset of the points; values in ascending point order.
struct LocalFunction {
  PointSet domain = 0;
  FunctionVector values;
  auto operator<=>(const LocalFunction&) const = default;
};

class ConstrainedSpace {
 public:
  // `constraints` must hold a subuniverse of L^I for every I with |I| <= k.
  ConstrainedSpace(FiniteTopology topology, FiniteAlgebra dualizer, std::size_t k,
                   ConstraintMap constraints);

  // Fills in the missing sets: a missing top-size set (|I| = min(k, |X|)) is
  // the product of its singleton constraints (L where those are missing too),
  // a missing smaller set is the projection of its first superset one larger.
  static ConstrainedSpace complete(FiniteTopology topology, FiniteAlgebra dualizer, std::size_t k,
                                   ConstraintMap partial);

  std::size_t size() const { return topology_.size(); }
  std::size_t arity() const { return k_; }
  const FiniteTopology& topology() const { return topology_; }
  const FiniteAlgebra& dualizer() const { return dualizer_; }
  const ConstraintMap& constraints() const { return constraints_; }
  const std::vector<FunctionVector>& at(PointSet i) const;
  bool allows(PointSet i, const FunctionVector& g) const;
  // Whether the restriction of the global f to i lies in A_i.
  bool allows_restriction(PointSet i, const FunctionVector& f) const;

  bool operator==(const ConstrainedSpace& o) const {
    return k_ == o.k_ && topology_ == o.topology_ && dualizer_ == o.dualizer_ &&
           constraints_ == o.constraints_;
  }

 private:
  FiniteTopology topology_;
  FiniteAlgebra dualizer_;
  std::size_t k_ = 2;
  ConstraintMap constraints_;
  std::map<PointSet, std::vector<char>> member_;  // by mixed-radix code
};

class UnaryConstrainedSpace {
 public:
  // approx is a block labelling of the points.
  UnaryConstrainedSpace(FiniteTopology topology, FiniteAlgebra dualizer, bool empty_nonempty,
                        std::vector<ElementSet> per_point, std::vector<std::size_t> approx);

  std::size_t size() const { return topology_.size(); }
  const FiniteTopology& topology() const { return topology_; }
  const FiniteAlgebra& dualizer() const { return dualizer_; }
  // A_empty is either {()} or, for constant-free L, possibly empty.
  bool empty_nonempty() const { return empty_nonempty_; }
  const ElementSet& at(std::size_t x) const { return per_point_[x]; }
  const std::vector<ElementSet>& per_point() const { return per_point_; }
  const Congruence& approx() const { return approx_; }
  bool equivalent(std::size_t x, std::size_t y) const {
    return approx_.blocks()[x] == approx_.blocks()[y];
  }

  bool operator==(const UnaryConstrainedSpace& o) const {
    return topology_ == o.topology_ && dualizer_ == o.dualizer_ &&
           empty_nonempty_ == o.empty_nonempty_ && per_point_ == o.per_point_ &&
           approx_ == o.approx_;
  }

 private:
  FiniteTopology topology_;
  FiniteAlgebra dualizer_;
  bool empty_nonempty_ = true;
  std::vector<ElementSet> per_point_;
  Congruence approx_;
};

// ---- validation ----

struct ConstrainedValidation {
  bool subdirect = false;
  bool continuous = false;
  bool separated = false;
  bool scott_continuous = false;
  std::string failure;  // first failed condition, if any
  bool ok() const { return subdirect && continuous && separated; }
};

ConstrainedValidation validate_constrained(const ConstrainedSpace& s, const Budget& budget = {});
ConstrainedValidation validate_constrained(const UnaryConstrainedSpace& s);

// ---- compatible functions, Cons and Func ----

std::vector<FunctionVector> ccomp(const ConstrainedSpace& s, const Budget& budget = {});
std::vector<FunctionVector> ccomp(const UnaryConstrainedSpace& s, const Budget& budget = {});
LSpace func(const ConstrainedSpace& s, const Budget& budget = {});
LSpace func(const UnaryConstrainedSpace& s, const Budget& budget = {});

ConstrainedSpace cons(const LSpace& x, std::size_t k);
UnaryConstrainedSpace cons_unary(const LSpace& x);

// Compatible functions on the subspace i (constraints on subsets of i plus
// continuity there), lexicographic in the values.
std::vector<LocalFunction> compatible_on(const ConstrainedSpace& s, PointSet i,
                                         const Budget& budget = {});
bool is_compatible(const ConstrainedSpace& s, const LocalFunction& g);

// ---- extension properties ----

struct GlobalExtension {
  bool holds = true;
  std::size_t ccomp_size = 0;
  std::optional<LocalFunction> witness;        // a member of some A_I with no extension
  std::optional<std::pair<std::size_t, std::size_t>> unseparated;  // unary: x !~ y, no f separates
};

GlobalExtension has_global_extension(const ConstrainedSpace& s, const Budget& budget = {});
GlobalExtension has_global_extension(const UnaryConstrainedSpace& s, const Budget& budget = {});

struct LocalExtension {
  bool holds = true;
  std::optional<LocalFunction> witness;  // compatible on witness->domain
  std::optional<std::size_t> point;      // cannot be extended to this point
};

// Every compatible function on a set of at most n points extends to every
// further point.
LocalExtension has_local_extension(const ConstrainedSpace& s, std::size_t n,
                                   const Budget& budget = {});

// M_{f,y}: the values a in A_y for which f + (y -> a) is compatible.
ElementSet possible_extensions(const ConstrainedSpace& s, const LocalFunction& f, std::size_t y);

struct LocalToGlobalReport {
  std::size_t lep_arity = 0;  // k(k-1)
  bool lep = false;
  bool gep = false;
  std::size_t convexity_checked = 0;
  std::optional<std::pair<LocalFunction, std::size_t>> nonconvex;  // (f, y)
  bool holds() const { return (!lep || gep) && !nonconvex; }
};

// m must be a (k+1)-ary NU operation of L.
LocalToGlobalReport local_to_global_verify(const ConstrainedSpace& s, const TermFunction& m,
                                           const Budget& budget = {});

// ---- morphisms and translations ----

bool is_constrained_map(const std::vector<std::size_t>& phi, const ConstrainedSpace& x,
                        const ConstrainedSpace& y);
bool is_constrained_map(const std::vector<std::size_t>& phi, const UnaryConstrainedSpace& x,
                        const UnaryConstrainedSpace& y);

ConstrainedSpace unary_to_binary(const UnaryConstrainedSpace& s);
// Needs every A_{x,y} to be a subdiagonal (x ~ y) or a product (x !~ y);
// the resulting ~ must be transitive.
UnaryConstrainedSpace binary_to_unary(const ConstrainedSpace& s);

// ---- 2_DL: reflexive relations ----

// up[x] = { y : x <= y }.
using Relation = std::vector<PointSet>;

bool is_reflexive(const Relation& r);
bool is_transitive(const Relation& r);
bool is_antisymmetric(const Relation& r);

// (1,0) is excluded from A_{x,y} exactly when x <= y.
ConstrainedSpace priestley_space(const FiniteTopology& topology, const Relation& leq);
Relation priestley_order(const ConstrainedSpace& s);

// For x not<= y some clopen up-set contains x and misses y.
bool priestley_separated(const FiniteTopology& topology, const Relation& leq);

// ---- positive MV chains ----

struct MvPriestleyReport {
  Relation order;  // x <= y iff A_{x,y} lies below the diagonal order
  bool partial_order = false;
  bool incomparable_are_products = false;
  bool continuous = false;
  Check subdirect{"subdirect", false, ""};
  Check diagonal{"diagonal", false, ""};
  Check extension{"extension", false, ""};
  bool mv_priestley = false;  // all of the above
  bool generic = false;       // validate_constrained().ok() and global extension
  Check five_case{"five_case", false, ""};
  bool lep2 = false;
  bool agrees() const { return mv_priestley == generic && (!subdirect.passed || five_case.passed == lep2); }
};

MvPriestleyReport mv_priestley_validate(const ConstrainedSpace& s, const Budget& budget = {});

}  // namespace natdual
