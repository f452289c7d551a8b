// Finite algebras as explicit operation tables.
//
// Elements of an algebra of size n are the indices 0..n-1. An operation of
// arity k is stored as a flat table of n^k results, indexed row-major with the
// first argument most significant.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace natdual {

using Elem = std::uint32_t;
using ElementSet = std::vector<Elem>;  // sorted, no duplicates
// A function X -> L on points 0..|X|-1, i.e. an element of L^X.
using FunctionVector = std::vector<Elem>;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Budget {
  std::size_t carrier_limit = 1'000'000;
  std::size_t table_limit = 50'000'000;
  std::size_t closure_limit = 2'000'000;
};

struct Operation {
  std::string name;
  std::size_t arity = 0;
  bool operator==(const Operation&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Operation> ops);

  std::size_t size() const { return ops_.size(); }
  const Operation& operator[](std::size_t i) const { return ops_[i]; }
  const std::vector<Operation>& operations() const { return ops_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws InputError
  bool has_constants() const;
  std::size_t max_arity() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Operation> ops_;
};

// n^k with overflow and budget check.
std::size_t checked_power(std::size_t n, std::size_t k, std::size_t limit);

class FiniteAlgebra {
 public:
  FiniteAlgebra() = default;
  // Validates table sizes and entries; empty carrier only without constants.
  FiniteAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Elem>> tables,
                std::vector<std::string> labels = {});

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return size_; }
  const std::vector<Elem>& table(std::size_t op) const { return tables_[op]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem a) const;
  std::optional<Elem> find_label(std::string_view l) const;

  Elem apply(std::size_t op, std::span<const Elem> args) const;
  Elem apply(std::size_t op, std::initializer_list<Elem> args) const {
    return apply(op, std::span<const Elem>(args.begin(), args.size()));
  }
  Elem apply(std::string_view op, std::initializer_list<Elem> args) const {
    return apply(sig_.index_of(op), args);
  }

  // Lattice order from a "meet" operation, if the signature has one.
  bool has_order() const { return sig_.find("meet").has_value(); }
  bool leq(Elem a, Elem b) const;

  bool operator==(const FiniteAlgebra& o) const {
    return sig_ == o.sig_ && size_ == o.size_ && tables_ == o.tables_;
  }

 private:
  Signature sig_;
  std::size_t size_ = 0;
  std::vector<std::vector<Elem>> tables_;
  std::vector<std::string> labels_;
};

// A total map between carriers, values[a] is the image of a.
struct ElementMap {
  std::vector<Elem> values;
  Elem operator()(Elem a) const { return values[a]; }
  std::size_t size() const { return values.size(); }
  bool operator==(const ElementMap&) const = default;
  auto operator<=>(const ElementMap&) const = default;
};

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h);
bool is_subuniverse(const FiniteAlgebra& a, const ElementSet& s);

// Smallest subuniverse containing the seeds (constants included).
ElementSet generate_subalgebra(const FiniteAlgebra& a, const ElementSet& seeds,
                               const Budget& budget = {});

// The subalgebra on a subuniverse, renumbered in ascending element order.
FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, const ElementSet& s,
                                 const Budget& budget = {});

// A^n with coordinates encoded row-major, first coordinate most significant.
FiniteAlgebra direct_power(const FiniteAlgebra& a, std::size_t n, const Budget& budget = {});

// All subuniverses, in ascending (size, elements) order.
std::vector<ElementSet> enumerate_subuniverses(const FiniteAlgebra& a, const Budget& budget = {});

// Greedy generating set: ascending scan, then redundant generators dropped.
ElementSet generating_set(const FiniteAlgebra& a);

// Keeps only the named operations, in the given order.
FiniteAlgebra reduct(const FiniteAlgebra& a, const std::vector<std::string>& ops);

}  // namespace natdual
