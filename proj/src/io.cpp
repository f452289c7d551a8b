#include "natdual/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "natdual/catalog.hpp"

namespace natdual::io {

using json = nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t");
  return std::string(s.substr(a, b - a + 1));
}

[[noreturn]] void invalid(const Entry& e, const std::string& what) {
  throw ValidationError("line " + std::to_string(e.line) + " (" + e.key + "): " + what);
}

json value_of(const Entry& e) { return json::parse(e.value); }

std::size_t as_size(const Entry& e, const json& j) {
  if (!j.is_number_unsigned()) invalid(e, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string as_string(const Entry& e, const json& j) {
  if (!j.is_string()) invalid(e, "expected a string");
  return j.get<std::string>();
}

json as_array(const Entry& e, const json& j) {
  if (!j.is_array()) invalid(e, "expected an array");
  return j;
}

Elem element(const Entry& e, const json& j, const FiniteAlgebra& l) {
  if (j.is_string()) {
    auto a = l.find_label(j.get<std::string>());
    if (!a) invalid(e, "unknown element '" + j.get<std::string>() + "'");
    return *a;
  }
  if (j.is_number_unsigned() && j.get<std::size_t>() < l.size()) return j.get<Elem>();
  invalid(e, "expected an element of the dualizer, got " + j.dump());
}

void flatten(const Entry& e, const std::string& op, const json& j, std::size_t depth,
             std::size_t n, std::vector<Elem>& prefix, std::vector<Elem>& out) {
  if (depth == 0) {
    if (!j.is_number_unsigned() || j.get<std::size_t>() >= n) {
      std::string tuple;
      for (Elem a : prefix) tuple += (tuple.empty() ? "" : ",") + std::to_string(a);
      invalid(e, "table " + op + ": entry (" + tuple + ") = " + j.dump() + " is out of range");
    }
    out.push_back(j.get<Elem>());
    return;
  }
  if (!j.is_array() || j.size() != n) {
    invalid(e, "table " + op + " must be nested arrays of length " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    prefix.push_back(static_cast<Elem>(i));
    flatten(e, op, j[i], depth - 1, n, prefix, out);
    prefix.pop_back();
  }
}

json nest(const std::vector<Elem>& table, std::size_t arity, std::size_t n, std::size_t& pos) {
  if (arity == 0) return table[pos++];
  json a = json::array();
  for (std::size_t i = 0; i < n; ++i) a.push_back(nest(table, arity - 1, n, pos));
  return a;
}

std::string line(std::string_view key, const json& v) { return std::string(key) + ": " + v.dump() + "\n"; }

std::size_t point_index(const Entry& e, const std::map<std::string, std::size_t>& index,
                        const std::string& name) {
  auto it = index.find(name);
  if (it == index.end()) invalid(e, "unknown point '" + name + "'");
  return it->second;
}

std::string set_key(const std::vector<std::string>& points, PointSet s) {
  std::string out = "A{";
  bool first = true;
  for (std::size_t x : members(s)) {
    if (!first) out += ",";
    out += points[x];
    first = false;
  }
  return out + "}";
}

json labels_of(const FiniteAlgebra& l, const FunctionVector& f) {
  json a = json::array();
  for (Elem e : f) a.push_back(l.label(e));
  return a;
}

// Strict order induced by compatible values: x <= y iff every pair of values
// at (x, y) is ordered.
Relation value_order(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& le) {
  Relation r(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || le(x, y)) r[x] |= singleton(y);
    }
  }
  return r;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string dot(const Relation* order, const std::vector<std::string>& points,
                const std::vector<std::string>& notes, const std::vector<std::size_t>* classes) {
  const std::size_t n = points.size();
  std::ostringstream out;
  out << "digraph space {\n  rankdir=BT;\n  node [shape=box];\n";
  if (classes) {
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t x = 0; x < n; ++x) blocks[(*classes)[x]].push_back(x);
    for (const auto& [b, xs] : blocks) {
      if (xs.size() < 2) continue;
      out << "  subgraph cluster_" << b << " {\n    style=rounded;\n";
      for (std::size_t x : xs) out << "    " << quoted(points[x]) << ";\n";
      out << "  }\n";
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    out << "  " << quoted(points[x]);
    if (!notes.empty()) out << " [label=" << quoted(points[x] + "\n" + notes[x]) << "]";
    out << ";\n";
  }
  if (order) {
    const Relation& r = *order;
    auto lt = [&](std::size_t x, std::size_t y) { return contains(r[x], y) && !contains(r[y], x); };
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!lt(x, y)) continue;
        bool cover = true;
        for (std::size_t z = 0; z < n && cover; ++z) {
          if (lt(x, z) && lt(z, y)) cover = false;
        }
        if (cover) out << "  " << quoted(points[x]) << " -> " << quoted(points[y]) << ";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string value_note(const FiniteAlgebra& l, const ElementSet& vals) {
  std::string s = "{";
  for (std::size_t i = 0; i < vals.size(); ++i) s += (i ? "," : "") + l.label(vals[i]);
  return s + "}";
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column) {}

const Entry* Document::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

Document parse_document(std::string_view text) {
  Document doc;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t start = raw.find_first_not_of(" \t");
    if (start == std::string_view::npos || raw[start] == '#') continue;
    std::size_t colon = raw.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, start + 1, "expected 'key: value'");
    std::string key = trim(raw.substr(0, colon));
    if (key.empty()) throw ParseError(line_no, colon + 1, "empty key");
    if (!seen.insert(key).second) throw ParseError(line_no, start + 1, "duplicate key '" + key + "'");
    std::string_view rest = raw.substr(colon + 1);
    std::size_t vstart = colon + 1 + std::min(rest.find_first_not_of(" \t"), rest.size());
    if (trim(rest).empty()) throw ParseError(line_no, vstart + 1, "missing value");
    try {
      json v = json::parse(rest);
      doc.entries.push_back({key, v.dump(), line_no});
    } catch (const json::parse_error& e) {
      std::size_t col = colon + 1 + (e.byte > 0 ? e.byte : 1);
      throw ParseError(line_no, col, "invalid JSON value");
    }
    if (end == text.size()) break;
  }
  return doc;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---- algebras ----

FiniteAlgebra parse_algebra(const Document& doc) {
  std::size_t n = 0;
  bool have_size = false;
  std::vector<std::string> labels;
  std::vector<Operation> ops;
  const Entry* ops_entry = nullptr;
  std::map<std::string, const Entry*> tables;
  for (const auto& e : doc.entries) {
    json v = value_of(e);
    if (e.key == "kind") {
      if (as_string(e, v) != "algebra") invalid(e, "expected kind \"algebra\"");
    } else if (e.key == "name") {
      as_string(e, v);
    } else if (e.key == "size") {
      n = as_size(e, v);
      have_size = true;
    } else if (e.key == "labels") {
      for (const auto& l : as_array(e, v)) labels.push_back(as_string(e, l));
    } else if (e.key == "ops") {
      ops_entry = &e;
      for (const auto& o : as_array(e, v)) {
        if (!o.is_array() || o.size() != 2 || !o[0].is_string() || !o[1].is_number_unsigned()) {
          invalid(e, "each operation is [name, arity]");
        }
        ops.push_back({o[0].get<std::string>(), o[1].get<std::size_t>()});
      }
    } else if (e.key.rfind("table ", 0) == 0) {
      tables[trim(e.key.substr(6))] = &e;
    } else {
      invalid(e, "unknown key");
    }
  }
  if (!have_size) throw ValidationError("algebra document has no size");
  if (!labels.empty() && labels.size() != n) throw ValidationError("labels must name every element");
  std::vector<std::vector<Elem>> flat;
  for (const auto& op : ops) {
    auto it = tables.find(op.name);
    if (it == tables.end()) throw ValidationError("missing table for operation " + op.name);
    std::vector<Elem> prefix, out;
    flatten(*it->second, op.name, value_of(*it->second), op.arity, n, prefix, out);
    flat.push_back(std::move(out));
    tables.erase(it);
  }
  if (!tables.empty()) invalid(*tables.begin()->second, "table for an undeclared operation");
  try {
    return FiniteAlgebra(Signature(ops), n, std::move(flat), std::move(labels));
  } catch (const InputError& err) {
    if (ops_entry) invalid(*ops_entry, err.what());
    throw ValidationError(err.what());
  }
}

std::string serialize_algebra(const FiniteAlgebra& a, std::string_view name) {
  std::string out = line("kind", "algebra") + line("name", std::string(name)) + line("size", a.size());
  json labels = json::array();
  for (Elem e = 0; e < a.size(); ++e) labels.push_back(a.label(e));
  out += line("labels", labels);
  json ops = json::array();
  for (const auto& op : a.signature().operations()) ops.push_back({op.name, op.arity});
  out += line("ops", ops);
  for (std::size_t i = 0; i < a.signature().operations().size(); ++i) {
    const auto& op = a.signature().operations()[i];
    std::size_t pos = 0;
    out += line("table " + op.name, nest(a.table(i), op.arity, a.size(), pos));
  }
  return out;
}

FiniteAlgebra resolve_dualizer(std::string_view ref, const std::filesystem::path& base) {
  if (ref.rfind("builtin:", 0) == 0) return catalog::build(ref.substr(8));
  std::filesystem::path p(ref);
  if (p.is_relative() && !base.empty()) p = base / p;
  return parse_algebra(parse_document(read_file(p)));
}

// ---- spaces ----

std::string_view to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::lspace: return "lspace";
    case SpaceKind::constrained: return "constrained";
    case SpaceKind::unary: return "constrained-unary";
    case SpaceKind::relation: return "relation";
  }
  return "";
}

SpaceDocument parse_space(const Document& doc, const std::filesystem::path& base,
                          std::optional<FiniteAlgebra> dualizer) {
  SpaceDocument d;
  const Entry* kind = doc.find("kind");
  if (!kind) throw ValidationError("space document has no kind");
  std::string k = as_string(*kind, value_of(*kind));
  if (k == "lspace") {
    d.kind = SpaceKind::lspace;
  } else if (k == "constrained") {
    d.kind = SpaceKind::constrained;
  } else if (k == "constrained-unary") {
    d.kind = SpaceKind::unary;
  } else if (k == "relation") {
    d.kind = SpaceKind::relation;
  } else {
    invalid(*kind, "unknown kind '" + k + "'");
  }

  const Entry* pts = doc.find("points");
  if (!pts) throw ValidationError("space document has no points");
  std::map<std::string, std::size_t> index;
  for (const auto& p : as_array(*pts, value_of(*pts))) {
    std::string name = as_string(*pts, p);
    if (name.empty() || name.find_first_of(",{} \t") != std::string::npos) {
      invalid(*pts, "point names must be nonempty and free of ',{}' and blanks");
    }
    if (!index.emplace(name, d.points.size()).second) invalid(*pts, "duplicate point " + name);
    d.points.push_back(name);
  }
  const std::size_t n = d.points.size();
  if (n > kMaxPoints) invalid(*pts, "at most 64 points are supported");

  d.topology = FiniteTopology::discrete(n);
  if (const Entry* o = doc.find("opens")) {
    std::vector<PointSet> sets;
    for (const auto& s : as_array(*o, value_of(*o))) {
      PointSet set = 0;
      for (const auto& p : as_array(*o, s)) set |= singleton(point_index(*o, index, as_string(*o, p)));
      sets.push_back(set);
    }
    d.topology = FiniteTopology::generated(n, sets);
  }

  FiniteAlgebra l;
  if (d.kind == SpaceKind::relation) {
    d.dualizer_ref = "builtin:dl2";
    l = catalog::dl2();
  } else if (dualizer) {
    l = *dualizer;
    const Entry* r = doc.find("dualizer");
    d.dualizer_ref = r ? as_string(*r, value_of(*r)) : "";
  } else {
    const Entry* r = doc.find("dualizer");
    if (!r) throw ValidationError("space document has no dualizer");
    d.dualizer_ref = as_string(*r, value_of(*r));
    try {
      l = resolve_dualizer(d.dualizer_ref, base);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& err) {
      invalid(*r, err.what());
    }
  }

  std::set<std::string> known{"kind", "points", "opens", "dualizer"};
  auto check_keys = [&](const std::set<std::string>& extra, bool constraint_keys) {
    for (const auto& e : doc.entries) {
      if (known.count(e.key) || extra.count(e.key)) continue;
      if (constraint_keys && e.key.size() >= 3 && e.key.rfind("A{", 0) == 0 && e.key.back() == '}') continue;
      invalid(e, "unknown key");
    }
  };
  auto point_set = [&](const Entry& e, std::vector<std::size_t>& order) {
    std::string inner = e.key.substr(2, e.key.size() - 3);
    PointSet s = 0;
    std::size_t p = 0;
    while (!trim(inner).empty()) {
      std::size_t comma = inner.find(',', p);
      std::string name = trim(inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p));
      std::size_t x = point_index(e, index, name);
      if (contains(s, x)) invalid(e, "repeated point " + name);
      s |= singleton(x);
      order.push_back(x);
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    return s;
  };

  try {
    if (d.kind == SpaceKind::lspace) {
      check_keys({"comp"}, false);
      const Entry* c = doc.find("comp");
      if (!c) throw ValidationError("lspace document has no comp");
      std::vector<FunctionVector> comp;
      for (const auto& f : as_array(*c, value_of(*c))) {
        if (!f.is_array() || f.size() != n) invalid(*c, "each function lists one value per point");
        FunctionVector g;
        for (const auto& v : f) g.push_back(element(*c, v, l));
        comp.push_back(std::move(g));
      }
      d.lspace.emplace(d.topology, l, std::move(comp));
    } else if (d.kind == SpaceKind::constrained) {
      check_keys({"k"}, true);
      std::size_t arity = 2;
      if (const Entry* ke = doc.find("k")) arity = as_size(*ke, value_of(*ke));
      ConstraintMap partial;
      for (const auto& e : doc.entries) {
        if (e.key.rfind("A{", 0) != 0) continue;
        std::vector<std::size_t> order;
        PointSet s = point_set(e, order);
        auto sorted = members(s);
        std::vector<FunctionVector> tuples;
        for (const auto& t : as_array(e, value_of(e))) {
          if (!t.is_array() || t.size() != order.size()) invalid(e, "tuple length differs from the point set");
          FunctionVector g(order.size());
          for (std::size_t i = 0; i < order.size(); ++i) {
            std::size_t pos = static_cast<std::size_t>(
                std::lower_bound(sorted.begin(), sorted.end(), order[i]) - sorted.begin());
            g[pos] = element(e, t[i], l);
          }
          tuples.push_back(std::move(g));
        }
        partial[s] = std::move(tuples);
      }
      d.constrained.emplace(ConstrainedSpace::complete(d.topology, l, arity, std::move(partial)));
    } else if (d.kind == SpaceKind::unary) {
      check_keys({"approx"}, true);
      bool nonempty = true;
      std::vector<ElementSet> per_point(n);
      std::vector<bool> given(n, false);
      for (const auto& e : doc.entries) {
        if (e.key.rfind("A{", 0) != 0) continue;
        std::vector<std::size_t> order;
        PointSet s = point_set(e, order);
        json v = value_of(e);
        if (s == 0) {
          if (v == json::array()) {
            nonempty = false;
          } else if (v != json::array({json::array()})) {
            invalid(e, "A{} is [[]] or []");
          }
          continue;
        }
        if (cardinality(s) != 1) invalid(e, "unary spaces only constrain single points");
        std::set<Elem> vals;
        for (const auto& a : as_array(e, v)) vals.insert(element(e, a, l));
        per_point[order[0]] = ElementSet(vals.begin(), vals.end());
        given[order[0]] = true;
      }
      for (std::size_t x = 0; x < n; ++x) {
        if (!given[x]) {
          for (Elem a = 0; a < l.size(); ++a) per_point[x].push_back(a);
        }
      }
      std::vector<std::size_t> labels(n);
      for (std::size_t x = 0; x < n; ++x) labels[x] = x;
      if (const Entry* a = doc.find("approx")) {
        std::vector<bool> used(n, false);
        for (const auto& block : as_array(*a, value_of(*a))) {
          std::optional<std::size_t> first;
          for (const auto& p : as_array(*a, block)) {
            std::size_t x = point_index(*a, index, as_string(*a, p));
            if (used[x]) invalid(*a, "point " + d.points[x] + " is in two blocks");
            used[x] = true;
            if (!first) first = x;
            labels[x] = *first;
          }
        }
      }
      d.unary.emplace(d.topology, l, nonempty, std::move(per_point), std::move(labels));
    } else {
      check_keys({"leq"}, false);
      const Entry* e = doc.find("leq");
      if (!e) throw ValidationError("relation document has no leq");
      Relation r(n, 0);
      for (const auto& p : as_array(*e, value_of(*e))) {
        if (!p.is_array() || p.size() != 2) invalid(*e, "each pair is [x, y]");
        r[point_index(*e, index, as_string(*e, p[0]))] |= singleton(point_index(*e, index, as_string(*e, p[1])));
      }
      d.relation = std::move(r);
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const BudgetError&) {
    throw;
  } catch (const InputError& err) {
    throw ValidationError(err.what());
  }
  return d;
}

std::string serialize_space(const SpaceDocument& d) {
  const auto& pts = d.points;
  std::string out = line("kind", std::string(to_string(d.kind)));
  if (d.kind == SpaceKind::constrained) out += line("k", d.constrained->arity());
  if (d.kind != SpaceKind::relation) out += line("dualizer", d.dualizer_ref);
  out += line("points", pts);
  if (!d.topology.is_discrete()) {
    std::set<PointSet> nb(d.topology.neighbourhoods().begin(), d.topology.neighbourhoods().end());
    json opens = json::array();
    for (PointSet s : nb) {
      json names = json::array();
      for (std::size_t x : members(s)) names.push_back(pts[x]);
      opens.push_back(names);
    }
    out += line("opens", opens);
  }
  switch (d.kind) {
    case SpaceKind::lspace: {
      json comp = json::array();
      for (const auto& f : d.lspace->comp()) comp.push_back(labels_of(d.lspace->dualizer(), f));
      out += line("comp", comp);
      break;
    }
    case SpaceKind::constrained: {
      const auto& s = *d.constrained;
      for (PointSet i : subsets_up_to(s.size(), s.arity())) {
        json tuples = json::array();
        for (const auto& g : s.at(i)) tuples.push_back(labels_of(s.dualizer(), g));
        out += line(set_key(pts, i), tuples);
      }
      break;
    }
    case SpaceKind::unary: {
      const auto& u = *d.unary;
      out += line("A{}", u.empty_nonempty() ? json::array({json::array()}) : json::array());
      for (std::size_t x = 0; x < u.size(); ++x) out += line(set_key(pts, singleton(x)), labels_of(u.dualizer(), u.at(x)));
      if (u.approx().num_blocks() < u.size()) {
        std::map<std::size_t, json> blocks;
        for (std::size_t x = 0; x < u.size(); ++x) {
          auto& b = blocks[u.approx().block(static_cast<Elem>(x))];
          if (b.is_null()) b = json::array();
          b.push_back(pts[x]);
        }
        json approx = json::array();
        for (auto& [b, names] : blocks) approx.push_back(names);
        out += line("approx", approx);
      }
      break;
    }
    case SpaceKind::relation: {
      json pairs = json::array();
      for (std::size_t x = 0; x < pts.size(); ++x) {
        for (std::size_t y : members((*d.relation)[x])) pairs.push_back({pts[x], pts[y]});
      }
      out += line("leq", pairs);
      break;
    }
  }
  return out;
}

std::vector<std::string> default_points(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

SpaceDocument make_document(const LSpace& x, std::string dualizer_ref, std::vector<std::string> points) {
  SpaceDocument d;
  d.kind = SpaceKind::lspace;
  d.dualizer_ref = std::move(dualizer_ref);
  d.points = points.empty() ? default_points(x.size()) : std::move(points);
  d.topology = x.topology();
  d.lspace = x;
  return d;
}

SpaceDocument make_document(const ConstrainedSpace& s, std::string dualizer_ref,
                            std::vector<std::string> points) {
  SpaceDocument d;
  d.kind = SpaceKind::constrained;
  d.dualizer_ref = std::move(dualizer_ref);
  d.points = points.empty() ? default_points(s.size()) : std::move(points);
  d.topology = s.topology();
  d.constrained = s;
  return d;
}

SpaceDocument make_document(const UnaryConstrainedSpace& s, std::string dualizer_ref,
                            std::vector<std::string> points) {
  SpaceDocument d;
  d.kind = SpaceKind::unary;
  d.dualizer_ref = std::move(dualizer_ref);
  d.points = points.empty() ? default_points(s.size()) : std::move(points);
  d.topology = s.topology();
  d.unary = s;
  return d;
}

// ---- DOT ----

std::string export_dot(const Relation& order, const std::vector<std::string>& points) {
  return dot(&order, points, {}, nullptr);
}

std::string export_dot(const SpaceDocument& d) {
  const std::size_t n = d.points.size();
  std::vector<std::string> notes;
  switch (d.kind) {
    case SpaceKind::relation:
      return export_dot(*d.relation, d.points);
    case SpaceKind::lspace: {
      const LSpace& x = *d.lspace;
      const FiniteAlgebra& l = x.dualizer();
      for (std::size_t p = 0; p < n; ++p) {
        std::set<Elem> vals;
        for (const auto& f : x.comp()) vals.insert(f[p]);
        notes.push_back(value_note(l, ElementSet(vals.begin(), vals.end())));
      }
      if (!l.has_order()) return dot(nullptr, d.points, notes, nullptr);
      Relation r = value_order(n, [&](std::size_t a, std::size_t b) {
        return std::all_of(x.comp().begin(), x.comp().end(),
                           [&](const FunctionVector& f) { return l.leq(f[a], f[b]); });
      });
      return dot(&r, d.points, notes, nullptr);
    }
    case SpaceKind::constrained: {
      const ConstrainedSpace& s = *d.constrained;
      const FiniteAlgebra& l = s.dualizer();
      auto subdiagonal = [&](std::size_t x, std::size_t y) {
        const auto& a = s.at(singleton(x) | singleton(y));
        return std::all_of(a.begin(), a.end(), [](const FunctionVector& p) { return p[0] == p[1]; });
      };
      std::vector<std::size_t> classes(n);
      for (std::size_t x = 0; x < n; ++x) {
        std::set<Elem> vals;
        for (const auto& v : s.at(singleton(x))) vals.insert(v[0]);
        notes.push_back(value_note(l, ElementSet(vals.begin(), vals.end())));
        classes[x] = x;
        for (std::size_t y = 0; y < x; ++y) {
          if (subdiagonal(x, y)) {
            classes[x] = classes[y];
            break;
          }
        }
      }
      bool subdiag_classes = true;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < x; ++y) {
          if (subdiagonal(x, y) != (classes[x] == classes[y])) subdiag_classes = false;
        }
      }
      if (!l.has_order()) return dot(nullptr, d.points, notes, subdiag_classes ? &classes : nullptr);
      Relation r = value_order(n, [&](std::size_t a, std::size_t b) {
        const auto& pairs = s.at(singleton(a) | singleton(b));
        return std::all_of(pairs.begin(), pairs.end(), [&](const FunctionVector& p) {
          return a < b ? l.leq(p[0], p[1]) : l.leq(p[1], p[0]);
        });
      });
      return dot(&r, d.points, notes, subdiag_classes ? &classes : nullptr);
    }
    case SpaceKind::unary: {
      const UnaryConstrainedSpace& u = *d.unary;
      for (std::size_t x = 0; x < n; ++x) notes.push_back(value_note(u.dualizer(), u.at(x)));
      return dot(nullptr, d.points, notes, &u.approx().blocks());
    }
  }
  return {};
}

}  // namespace natdual::io
