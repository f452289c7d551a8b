// Terms, term functions, near-unanimity search and free algebras.
//
// Text form: a variable is x0, x1, ...; an application is "(op arg ...)",
// constants included, e.g. "(join (meet x0 x1) (top))".
#pragma once

#include <memory>
#include <optional>

#include "natdual/algebra.hpp"

namespace natdual {

class Term {
 public:
  static Term var(std::size_t i);
  static Term apply(std::string op, std::vector<Term> args);
  static Term parse(std::string_view text);  // throws InputError with an offset

  bool is_variable() const;
  std::size_t variable() const;
  const std::string& op() const;
  const std::vector<Term>& args() const;
  // One more than the largest variable index, 0 for closed terms.
  std::size_t variable_bound() const;
  std::string to_string() const;
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Elem eval_term(const FiniteAlgebra& l, const Term& t, std::span<const Elem> env);

struct TermFunction {
  std::size_t arity = 0;
  std::vector<Elem> table;  // row-major, first argument most significant
  std::optional<Term> witness;
  Elem at(std::span<const Elem> args, std::size_t base) const;
};

TermFunction term_function(const FiniteAlgebra& l, const Term& t, std::size_t arity);

struct NuCheck {
  bool holds = true;
  std::vector<Elem> counterexample;  // first failing argument tuple
};

// f(b,a,..,a) = f(a,b,a,..,a) = ... = f(a,..,a,b) = a for all a, b.
NuCheck check_near_unanimity(const FiniteAlgebra& l, const TermFunction& f);

// Searches the clone of L for an NU term of the given arity (>= 3). The
// closure only tracks values on near-unanimous argument tuples, which is
// enough to decide the question; an empty result is a proof of absence.
std::optional<TermFunction> search_nu_function(const FiniteAlgebra& l, std::size_t arity,
                                               const Budget& budget = {});

// Free algebra of ISP(L) on n generators, as the subalgebra of L^(L^n)
// generated by the projections.
struct FreeAlgebra {
  std::vector<FunctionVector> members;
  FiniteAlgebra algebra;
  std::vector<Elem> generators;
};
FreeAlgebra free_algebra(const FiniteAlgebra& l, std::size_t n, const Budget& budget = {});
FreeAlgebra free_one_generated(const FiniteAlgebra& l, const Budget& budget = {});

// Unary term over posluk(n) sending a to 1 and b below 1, for b < a
// (elements as indices i standing for i/n).
Term separating_term_posmv(int n, Elem a, Elem b);

// M is convex for the NU operation m: whenever all but at most one argument
// lie in M and the remaining one lies in `ambient` (default: all of L), the
// value lies in M.
bool is_convex(const FiniteAlgebra& l, const TermFunction& m, const ElementSet& set,
               std::optional<ElementSet> ambient = std::nullopt);

}  // namespace natdual
