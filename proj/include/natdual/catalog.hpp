// Built-in dualizers.
//
//   bool2        two-element Boolean algebra      meet join neg bot top
//   dl2          two-element bounded lattice      meet join bot top
//   lattice2     two-element lattice, no bounds   meet join
//   luk(n)       Lukasiewicz chain {0,1/n,..,1}   meet join oplus odot neg bot top
//   posluk(n)    its negation-free reduct         meet join oplus odot bot top
//
// In the chains element i stands for the rational i/n, so the index order is
// the lattice order.
#pragma once

#include <string_view>

#include "natdual/algebra.hpp"

namespace natdual::catalog {

struct Rational {
  long num = 0;
  long den = 1;
  bool operator==(const Rational&) const = default;
};

FiniteAlgebra bool2();
FiniteAlgebra dl2();
FiniteAlgebra lattice2();
FiniteAlgebra luk(int n);
FiniteAlgebra posluk(int n);

// Element i of luk(n)/posluk(n) as a reduced fraction.
Rational value_of(Elem i, int n);
std::string rational_label(Elem i, int n);

// Parses "bool2", "dl2", "lattice2", "luk(3)" or "luk3", "posluk(2)" or
// "posluk2"; throws InputError.
FiniteAlgebra build(std::string_view name);
std::vector<std::string> names();

// Every element x has some n with n.x (n-fold oplus) idempotent. Needs oplus.
bool check_hyperarchimedean(const FiniteAlgebra& a);

}  // namespace natdual::catalog
