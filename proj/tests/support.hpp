#pragma once

#include <random>

#include "natdual/algebra.hpp"
#include "natdual/catalog.hpp"
#include "natdual/corpus.hpp"
#include "natdual/subpower.hpp"

namespace natdual::testing {

inline std::vector<FiniteAlgebra> dualizers() {
  return {catalog::bool2(), catalog::dl2(), catalog::luk(2), catalog::luk(3), catalog::posluk(2)};
}

inline std::vector<FunctionVector> random_subpower(const FiniteAlgebra& l, std::size_t dim,
                                                   std::size_t max_seeds, std::mt19937_64& rng) {
  return corpus::random_subpower(l, dim, max_seeds, rng);
}

// A hand-built M3 (diamond) bounded lattice: 0 < a,b,c < 1.
inline FiniteAlgebra m3() {
  // elements: 0=bot, 1=a, 2=b, 3=c, 4=top
  auto meet = [](Elem x, Elem y) -> Elem {
    if (x == y) return x;
    if (x == 4) return y;
    if (y == 4) return x;
    return 0;
  };
  auto join = [](Elem x, Elem y) -> Elem {
    if (x == y) return x;
    if (x == 0) return y;
    if (y == 0) return x;
    return 4;
  };
  std::vector<Elem> tm, tj;
  for (Elem x = 0; x < 5; ++x) {
    for (Elem y = 0; y < 5; ++y) {
      tm.push_back(meet(x, y));
      tj.push_back(join(x, y));
    }
  }
  return FiniteAlgebra(Signature({{"meet", 2}, {"join", 2}, {"bot", 0}, {"top", 0}}), 5,
                       {tm, tj, {0}, {4}});
}

}  // namespace natdual::testing
