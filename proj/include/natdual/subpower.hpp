// Subsets of L^X handled as explicit lists of function vectors, without
// materialising the power itself.
#pragma once

#include "natdual/algebra.hpp"

namespace natdual {

// Subuniverse of L^dim generated by the seeds, in lexicographic order.
std::vector<FunctionVector> generate_subpower(const FiniteAlgebra& l, std::size_t dim,
                                              const std::vector<FunctionVector>& seeds,
                                              const Budget& budget = {});

bool is_subpower(const FiniteAlgebra& l, std::size_t dim, const std::vector<FunctionVector>& s);

// The algebra on a sorted subuniverse of L^dim; element i is members[i].
FiniteAlgebra subpower_algebra(const FiniteAlgebra& l, const std::vector<FunctionVector>& members,
                               const Budget& budget = {});

// All of L^dim in lexicographic order.
std::vector<FunctionVector> all_functions(std::size_t base, std::size_t dim,
                                          const Budget& budget = {});

// Mixed-radix code, first coordinate most significant.
std::uint64_t encode(const FunctionVector& f, std::size_t base);
FunctionVector decode(std::uint64_t code, std::size_t base, std::size_t dim);

// Restriction of f to the listed coordinates.
FunctionVector restrict_to(const FunctionVector& f, const std::vector<std::size_t>& coords);

// { f|coords : f in s }, sorted and deduplicated.
std::vector<FunctionVector> project(const std::vector<FunctionVector>& s,
                                    const std::vector<std::size_t>& coords);

std::string format_vector(const FiniteAlgebra& l, const FunctionVector& f);

}  // namespace natdual
