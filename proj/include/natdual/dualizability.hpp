// Finite checks of the properties that make L a dualizer: partial
// endomorphisms, subalgebras of L^2, interpolation and the bounded-arity
// property (BP), Chinese remainder systems, Jonsson-style finite covers,
// relative congruences against the spectrum, and Helly for NU-convex sets.
#pragma once

#include <optional>

#include "natdual/congruence.hpp"
#include "natdual/term.hpp"
#include "natdual/lspace.hpp"

namespace natdual {

// ---- partial endomorphisms ----

struct PartialEndomorphism {
  ElementSet domain;          // a subuniverse C of L
  std::vector<Elem> images;   // images[i] is the image of domain[i]
  bool trivial = false;       // the inclusion C -> L
};

struct PartialEndoReport {
  std::vector<PartialEndomorphism> endos;
  bool all_trivial = true;
  std::optional<PartialEndomorphism> witness;  // first non-inclusion
};

PartialEndoReport partial_endomorphisms(const FiniteAlgebra& l);

// ---- subalgebras of L^2 ----

enum class SquareKind { subdiagonal, product, other };
std::string_view to_string(SquareKind k);

// Classifies a subuniverse of L^2 given as sorted pairs. Diagonals of a
// single point count as subdiagonal.
SquareKind classify_pairs(const std::vector<FunctionVector>& pairs);

struct SquareSubalgebra {
  std::vector<FunctionVector> pairs;
  SquareKind kind = SquareKind::other;
};

struct SquareClassification {
  std::vector<SquareSubalgebra> subalgebras;
  bool only_subdiagonal_or_product = true;
};

SquareClassification classify_square_subalgebras(const FiniteAlgebra& l);

// ---- interpolation and BP ----

struct InterpolationResult {
  bool interpolated = true;
  std::optional<PointSet> failing_set;
};

// Every subset I of the points with |I| <= k (the empty set included) admits
// some g in A agreeing with f on I. Subsets are scanned by size, then in
// lexicographic order.
InterpolationResult is_k_interpolated(const std::vector<FunctionVector>& a, const FunctionVector& f,
                                      std::size_t k);

// f(x) != f(y) implies some g in A has g(x) != g(y).
bool separates_at_most(const std::vector<FunctionVector>& a, const FunctionVector& f);

enum class BpStrategy { exhaustive, sampled };

struct BpCounterexample {
  std::size_t points = 0;
  std::vector<FunctionVector> a;
  FunctionVector f;
};

struct BpReport {
  bool holds = true;
  std::size_t instances = 0;
  std::optional<BpCounterexample> counterexample;
};

// Searches for A <= L^X (|X| <= bound) and f outside A that is nevertheless
// k-interpolated by A. For k >= 2 only separated A are used; for k = 1 only
// f that separate at most as much as A. The sampled strategy draws random
// generated A until `samples` of them qualified (at most 20 * samples draws).
BpReport check_finite_bp(const FiniteAlgebra& l, std::size_t k, std::size_t bound,
                         BpStrategy strategy = BpStrategy::exhaustive, std::uint64_t seed = 1,
                         std::size_t samples = 500, const Budget& budget = {});

struct UnaryBpReport {
  bool binary_bp = false;
  bool binary_via_nu = false;  // a ternary NU term was found
  bool square_flag = false;    // Sub(L^2) only subdiagonal or product
  bool unary_bp = false;
};

// Unary BP holds iff binary BP holds and every subalgebra of L^2 is a
// subdiagonal or a product.
UnaryBpReport check_unary_bp_via_classification(const FiniteAlgebra& l);

// ---- Chinese remainder systems ----

struct CrtEquation {
  Elem a = 0;
  Congruence theta;
};

struct CrtResult {
  bool premise = false;   // every subsystem of at most k equations is solvable
  bool solvable = false;  // the whole system is
  std::optional<Elem> solution;
  bool holds() const { return !premise || solvable; }
};

// Each theta must be a relative congruence (A/theta in ISP(L)).
CrtResult chinese_remainder_check(const FiniteAlgebra& a, const FiniteAlgebra& l, std::size_t k,
                                  const std::vector<CrtEquation>& system);

struct CrtSweep {
  std::size_t systems = 0;
  std::optional<std::vector<CrtEquation>> counterexample;
};

// All systems of up to max_equations equations over relative congruences.
CrtSweep chinese_remainder_sweep(const FiniteAlgebra& a, const FiniteAlgebra& l, std::size_t k,
                                 std::size_t max_equations);

// ---- finite covers ----

using Cover = std::vector<PointSet>;

// Families of at most max_parts distinct nonempty subsets of n points whose
// union is everything; for n = 0 just the empty family.
std::vector<Cover> all_covers(std::size_t n, std::size_t max_parts);

struct JonssonReport {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<std::size_t> failing_hom;    // index into Hom(A, L)
  std::optional<std::size_t> failing_cover;  // index into covers
};

// For A <= L^X (sorted members), every h in Hom(A,L) and every cover: h
// factors through the restriction to some part, i.e. ker pi_part <= ker h.
JonssonReport jonsson_finite_cover_check(const FiniteAlgebra& l, std::size_t points,
                                         const std::vector<FunctionVector>& a,
                                         const std::vector<Cover>& covers);

// ---- relative congruences and the spectrum ----

// Join inside a meet-closed family of congruences (the least member above).
Congruence relative_join(const std::vector<Congruence>& family, const Congruence& x,
                         const Congruence& y);
bool is_distributive(const std::vector<Congruence>& family);

struct AntiIsoReport {
  std::vector<Check> preconditions;
  std::size_t spectrum_size = 0;
  std::size_t relative_congruences = 0;
  bool bijective = false;
  bool order_reversing = false;
  bool holds() const;
};

// Y |-> ker(pi_Y) from subsets of Spec A to relative congruences, checked to
// be an order-reversing bijection when the preconditions hold.
AntiIsoReport congruence_spectrum_antiisomorphism(const FiniteAlgebra& a, const FiniteAlgebra& l);

// ---- Helly ----

struct HellyResult {
  bool premise = false;  // all sets convex, every <= k of them meet
  std::string premise_failure;
  std::optional<Elem> point;
  bool point_in_all = false;
};

// m is an NU operation of arity k+1.
HellyResult helly_check(const FiniteAlgebra& l, const TermFunction& m,
                        const std::vector<ElementSet>& family);

}  // namespace natdual
