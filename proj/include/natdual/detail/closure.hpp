// Semi-naive closure of a set of vectors under the operations of a base
// algebra acting coordinatewise. Used for subalgebra generation (width 1),
// subpowers of L^X and clone closure.
#pragma once

#include <functional>
#include <unordered_map>

#include "natdual/algebra.hpp"

namespace natdual::detail {

struct VectorHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Elem e : v) {
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// How an item was obtained: a seed (op == npos) or op applied to earlier items.
struct Derivation {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t op = npos;
  std::size_t seed = 0;
  std::vector<std::size_t> args;
};

class PointwiseClosure {
 public:
  PointwiseClosure(const FiniteAlgebra& base, std::size_t width, const Budget& budget)
      : base_(base), width_(width), budget_(budget) {}

  // Returns the index of v and whether it was new.
  std::pair<std::size_t, bool> add(std::vector<Elem> v, Derivation d);

  // Closes under all operations. `stop` is consulted for every new item;
  // returns true if it fired.
  bool run(const std::function<bool(std::size_t)>& stop = {});

  const std::vector<std::vector<Elem>>& items() const { return items_; }
  const std::vector<Derivation>& derivations() const { return derivs_; }
  std::optional<std::size_t> find(const std::vector<Elem>& v) const;

 private:
  std::vector<Elem> apply(std::size_t op, const std::vector<std::size_t>& args) const;

  const FiniteAlgebra& base_;
  std::size_t width_;
  Budget budget_;
  std::vector<std::vector<Elem>> items_;
  std::vector<Derivation> derivs_;
  std::unordered_map<std::vector<Elem>, std::size_t, VectorHash> index_;
};

// Calls f for every tuple in [0, p]^k that contains p at least once, each
// exactly once. Returns false early if f returns false.
bool for_each_tuple_containing(std::size_t p, std::size_t k,
                               const std::function<bool(const std::vector<std::size_t>&)>& f);

// Calls f for every tuple in [0, n)^k in lexicographic order.
bool for_each_tuple(std::size_t n, std::size_t k,
                    const std::function<bool(const std::vector<std::size_t>&)>& f);

}  // namespace natdual::detail
