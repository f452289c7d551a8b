// Text documents for algebras and spaces, and DOT output.
//
// A document is a sequence of `key: value` lines where each value is JSON;
// blank lines and lines starting with `#` are ignored and keys may not
// repeat. Algebra documents:
//
//   kind: "algebra"
//   name: "dl2"
//   size: 2
//   labels: ["0", "1"]
//   ops: [["meet", 2], ["join", 2], ["bot", 0], ["top", 0]]
//   table meet: [[0, 0], [0, 1]]
//   table bot: 0
//
// Tables are nested arrays indexed by the arguments in order. Space
// documents name their points, give `opens` as lists of point names
// (omitted means discrete) and refer to the dualizer as `builtin:NAME` or by
// a path relative to the document. Values of L are written as labels.
//
//   kind: "lspace"            comp: [["0", "1"], ...]
//   kind: "constrained"       k: 2, A{x,y}: [["0", "1"], ...] per point set;
//                             missing sets are filled in as by
//                             ConstrainedSpace::complete
//   kind: "constrained-unary" A{}: [[]] or [], A{x}: ["0", "1"],
//                             approx: [["x", "y"], ["z"]]
//   kind: "relation"          leq: [["x", "y"], ...] (pairs, reflexive ones
//                             included)
#pragma once

#include <filesystem>
#include <optional>

#include "natdual/constrained.hpp"

namespace natdual::io {

// Syntax errors carry a 1-based line and column.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Well-formed documents whose content does not describe a valid object.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

struct Entry {
  std::string key;
  std::string value;  // compact JSON
  std::size_t line = 0;
};

struct Document {
  std::vector<Entry> entries;
  const Entry* find(std::string_view key) const;
};

Document parse_document(std::string_view text);
std::string read_file(const std::filesystem::path& p);

// ---- algebras ----

FiniteAlgebra parse_algebra(const Document& doc);
std::string serialize_algebra(const FiniteAlgebra& a, std::string_view name);

// "builtin:NAME" or a path to an algebra document.
FiniteAlgebra resolve_dualizer(std::string_view ref, const std::filesystem::path& base = {});

// ---- spaces ----

enum class SpaceKind { lspace, constrained, unary, relation };
std::string_view to_string(SpaceKind k);

struct SpaceDocument {
  SpaceKind kind = SpaceKind::lspace;
  std::string dualizer_ref;
  std::vector<std::string> points;
  FiniteTopology topology;
  std::optional<LSpace> lspace;
  std::optional<ConstrainedSpace> constrained;
  std::optional<UnaryConstrainedSpace> unary;
  std::optional<Relation> relation;
};

// `dualizer` overrides the document's reference.
SpaceDocument parse_space(const Document& doc, const std::filesystem::path& base = {},
                          std::optional<FiniteAlgebra> dualizer = std::nullopt);
std::string serialize_space(const SpaceDocument& d);

// Default point names are p0, p1, ...
std::vector<std::string> default_points(std::size_t n);
SpaceDocument make_document(const LSpace& x, std::string dualizer_ref,
                            std::vector<std::string> points = {});
SpaceDocument make_document(const ConstrainedSpace& s, std::string dualizer_ref,
                            std::vector<std::string> points = {});
SpaceDocument make_document(const UnaryConstrainedSpace& s, std::string dualizer_ref,
                            std::vector<std::string> points = {});

// ---- DOT ----

// Hasse diagram of the order induced on the points (for dualizers with a
// lattice order), per-point value sets as node labels, and ~-classes as
// clusters. Relation documents draw their own Hasse diagram.
std::string export_dot(const SpaceDocument& d);
std::string export_dot(const Relation& order, const std::vector<std::string>& points);

}  // namespace natdual::io
