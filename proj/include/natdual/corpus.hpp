// Seeded instance generators and the acceptance suite shared by the
// acceptance binary and `natdual corpus`.
#pragma once

#include <functional>
#include <random>

#include "natdual/constrained.hpp"

namespace natdual::corpus {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);

// Subalgebra of L^dim generated by 1..max_seeds random vectors.
std::vector<FunctionVector> random_subpower(const FiniteAlgebra& l, std::size_t dim,
                                            std::size_t max_seeds, Rng& rng);

// Topology generated by up to n random subsets; discrete with probability
// 1/2.
FiniteTopology random_topology(std::size_t n, Rng& rng);

// L-space on a random topology whose compatible functions are generated by
// random continuous functions.
LSpace random_lspace(const FiniteAlgebra& l, std::size_t n, std::size_t max_seeds, Rng& rng);

// Binary constrained space on a discrete n-point set: random nonempty A_x
// and, per pair, a random subdirect subalgebra of A_x x A_y.
ConstrainedSpace random_binary_space(const FiniteAlgebra& l, std::size_t n, Rng& rng);

// All reflexive relations on n points, in order of the bit pattern of the
// off-diagonal entries.
std::vector<Relation> reflexive_relations(std::size_t n);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Runs acceptance criteria 1-11 (or just `only`); each result is passed to
// `report` as soon as it is known.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::optional<int> only = std::nullopt,
                                            const std::function<void(const CriterionResult&)>& report = {});

}  // namespace natdual::corpus
