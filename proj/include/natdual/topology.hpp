// Finite topological spaces on points 0..n-1 (n <= 64).
//
// A finite topology is determined by the smallest open set around each point,
// so that is what is stored; the full open-set family is derived on demand.
#pragma once

#include <bit>
#include <cstdint>

#include "natdual/algebra.hpp"

namespace natdual {

using PointSet = std::uint64_t;
inline constexpr std::size_t kMaxPoints = 64;

inline PointSet singleton(std::size_t x) { return PointSet{1} << x; }
inline bool contains(PointSet s, std::size_t x) { return (s >> x) & 1; }
inline std::size_t cardinality(PointSet s) { return static_cast<std::size_t>(std::popcount(s)); }
std::vector<std::size_t> members(PointSet s);
// Subsets of {0..n-1} with at most k elements, by size and then
// lexicographically; the empty set comes first.
std::vector<PointSet> subsets_up_to(std::size_t n, std::size_t k);

class FiniteTopology {
 public:
  FiniteTopology() = default;
  static FiniteTopology discrete(std::size_t n);
  static FiniteTopology indiscrete(std::size_t n);
  // Coarsest topology containing the given sets.
  static FiniteTopology generated(std::size_t n, const std::vector<PointSet>& subbasis);
  // Checks that the family contains the empty set and X and is closed under
  // union and intersection.
  static FiniteTopology from_opens(std::size_t n, const std::vector<PointSet>& opens);

  std::size_t size() const { return nbhd_.size(); }
  PointSet all() const;
  PointSet neighbourhood(std::size_t x) const { return nbhd_[x]; }
  const std::vector<PointSet>& neighbourhoods() const { return nbhd_; }
  bool is_open(PointSet s) const;
  bool is_closed(PointSet s) const { return is_open(all() & ~s); }
  bool is_discrete() const;
  // Sorted list of all open sets.
  std::vector<PointSet> opens(const Budget& budget = {}) const;

  // Quotient by the partition block_of (values 0..blocks-1).
  FiniteTopology quotient(const std::vector<std::size_t>& block_of, std::size_t blocks) const;

  bool operator==(const FiniteTopology&) const = default;

 private:
  explicit FiniteTopology(std::vector<PointSet> nbhd) : nbhd_(std::move(nbhd)) {}
  std::vector<PointSet> nbhd_;
};

// f: X -> Y between finite spaces.
bool is_continuous(const FiniteTopology& x, const FiniteTopology& y,
                   const std::vector<std::size_t>& f);

// f: X -> L with L discrete: f is constant on every minimal neighbourhood.
bool is_continuous_into_discrete(const FiniteTopology& x, const FunctionVector& f);

// All continuous maps X -> {0..base-1} (discrete), lexicographic.
std::vector<FunctionVector> continuous_functions(const FiniteTopology& x, std::size_t base,
                                                 const Budget& budget = {});

}  // namespace natdual
