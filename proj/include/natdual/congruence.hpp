// Homomorphisms, congruences, quotients and the quasivariety ISP(L).
#pragma once

#include <utility>

#include "natdual/algebra.hpp"

namespace natdual {

// Equivalence relation on 0..n-1 as a block index per element. Blocks are
// numbered by first occurrence, so equal relations compare equal.
class Congruence {
 public:
  Congruence() = default;
  explicit Congruence(const std::vector<std::size_t>& labels);
  static Congruence identity(std::size_t n);
  static Congruence total(std::size_t n);

  std::size_t size() const { return block_.size(); }
  std::size_t num_blocks() const { return num_blocks_; }
  std::size_t block(Elem a) const { return block_[a]; }
  bool related(Elem a, Elem b) const { return block_[a] == block_[b]; }
  const std::vector<std::size_t>& blocks() const { return block_; }
  // Representative (least element) of each block.
  std::vector<Elem> representatives() const;

  bool leq(const Congruence& o) const;
  Congruence meet(const Congruence& o) const;
  Congruence join(const Congruence& o) const;  // join of equivalence relations

  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence& o) const { return block_ <=> o.block_; }

 private:
  std::vector<std::size_t> block_;
  std::size_t num_blocks_ = 0;
};

bool is_congruence(const FiniteAlgebra& a, const Congruence& t);

// Hom(A, B) by backtracking over images of a generating set, propagating
// constants and operations as soon as arguments are known. Output is in
// lexicographic order of the generator images. `gens` defaults to
// generating_set(A).
std::vector<ElementMap> enumerate_homs(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                       std::optional<ElementSet> gens = std::nullopt);

Congruence kernel(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h);

// A/t; element i of the quotient is block i.
FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& t);

Congruence generate_congruence(const FiniteAlgebra& a,
                               const std::vector<std::pair<Elem, Elem>>& pairs);

// Con A, sorted by block vector.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a);

// True iff Hom(A, L) separates the elements of A.
bool in_prevariety(const FiniteAlgebra& a, const FiniteAlgebra& l);

// Congruences t with A/t in ISP(L), sorted by block vector.
std::vector<Congruence> relative_congruences(const FiniteAlgebra& a, const FiniteAlgebra& l);

}  // namespace natdual
