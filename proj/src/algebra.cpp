#include "natdual/algebra.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_set>

#include "natdual/detail/closure.hpp"

namespace natdual {

Signature::Signature(std::vector<Operation> ops) : ops_(std::move(ops)) {
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.name.empty()) throw InputError("operation with empty name");
    if (!seen.insert(op.name).second) throw InputError("duplicate operation '" + op.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown operation '" + std::string(name) + "'");
}

bool Signature::has_constants() const {
  return std::any_of(ops_.begin(), ops_.end(), [](const Operation& o) { return o.arity == 0; });
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& o : ops_) m = std::max(m, o.arity);
  return m;
}

std::size_t checked_power(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) {
      throw BudgetError("size " + std::to_string(n) + "^" + std::to_string(k) + " exceeds limit " +
                        std::to_string(limit));
    }
    r *= n;
  }
  if (r > limit) throw BudgetError("size exceeds limit " + std::to_string(limit));
  return r;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, std::size_t size, std::vector<std::vector<Elem>> tables,
                             std::vector<std::string> labels)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), labels_(std::move(labels)) {
  if (size_ > std::numeric_limits<Elem>::max()) throw InputError("carrier too large");
  if (size_ == 0 && sig_.has_constants()) {
    throw InputError("empty carrier with constants in the signature");
  }
  if (tables_.size() != sig_.size()) throw InputError("table count does not match signature");
  for (std::size_t i = 0; i < sig_.size(); ++i) {
    std::size_t expect = checked_power(size_, sig_[i].arity, std::numeric_limits<std::size_t>::max());
    if (tables_[i].size() != expect) {
      throw InputError("table of '" + sig_[i].name + "' has " + std::to_string(tables_[i].size()) +
                       " entries, expected " + std::to_string(expect));
    }
    for (Elem e : tables_[i]) {
      if (e >= size_) throw InputError("table of '" + sig_[i].name + "' leaves the carrier");
    }
  }
  if (!labels_.empty()) {
    if (labels_.size() != size_) throw InputError("label count does not match carrier size");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw InputError("labels are not distinct");
  }
}

std::string FiniteAlgebra::label(Elem a) const {
  if (a < labels_.size()) return labels_[a];
  return std::to_string(a);
}

std::optional<Elem> FiniteAlgebra::find_label(std::string_view l) const {
  for (Elem a = 0; a < size_; ++a) {
    if (label(a) == l) return a;
  }
  return std::nullopt;
}

Elem FiniteAlgebra::apply(std::size_t op, std::span<const Elem> args) const {
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * size_ + a;
  return tables_[op][idx];
}

bool FiniteAlgebra::leq(Elem a, Elem b) const {
  auto m = sig_.find("meet");
  if (!m) throw InputError("no lattice order: signature has no 'meet'");
  return apply(*m, {a, b}) == a;
}

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const ElementMap& h) {
  if (!(a.signature() == b.signature()) || h.size() != a.size()) return false;
  for (Elem v : h.values) {
    if (v >= b.size()) return false;
  }
  const Signature& sig = a.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    std::vector<Elem> args(k), imgs(k);
    bool ok = detail::for_each_tuple(a.size(), k, [&](const std::vector<std::size_t>& t) {
      for (std::size_t j = 0; j < k; ++j) {
        args[j] = static_cast<Elem>(t[j]);
        imgs[j] = h(args[j]);
      }
      return h(a.apply(op, args)) == b.apply(op, imgs);
    });
    if (!ok) return false;
  }
  return true;
}

bool is_subuniverse(const FiniteAlgebra& a, const ElementSet& s) {
  std::vector<bool> in(a.size(), false);
  for (Elem e : s) {
    if (e >= a.size()) return false;
    in[e] = true;
  }
  const Signature& sig = a.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    std::vector<Elem> args(k);
    bool ok = detail::for_each_tuple(s.size(), k, [&](const std::vector<std::size_t>& t) {
      for (std::size_t j = 0; j < k; ++j) args[j] = s[t[j]];
      return static_cast<bool>(in[a.apply(op, args)]);
    });
    if (!ok) return false;
  }
  return true;
}

ElementSet generate_subalgebra(const FiniteAlgebra& a, const ElementSet& seeds,
                               const Budget& budget) {
  detail::PointwiseClosure cl(a, 1, budget);
  for (Elem s : seeds) {
    if (s >= a.size()) throw InputError("seed outside the carrier");
    cl.add({s}, {});
  }
  cl.run();
  ElementSet out;
  for (const auto& v : cl.items()) out.push_back(v[0]);
  std::sort(out.begin(), out.end());
  return out;
}

FiniteAlgebra induced_subalgebra(const FiniteAlgebra& a, const ElementSet& s,
                                 const Budget& budget) {
  if (!is_subuniverse(a, s)) throw InputError("not a subuniverse");
  std::vector<Elem> pos(a.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<Elem>(i);
  const Signature& sig = a.signature();
  std::vector<std::vector<Elem>> tables(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    tables[op].reserve(checked_power(s.size(), k, budget.table_limit));
    std::vector<Elem> args(k);
    detail::for_each_tuple(s.size(), k, [&](const std::vector<std::size_t>& t) {
      for (std::size_t j = 0; j < k; ++j) args[j] = s[t[j]];
      tables[op].push_back(pos[a.apply(op, args)]);
      return true;
    });
  }
  std::vector<std::string> labels;
  if (!a.labels().empty()) {
    for (Elem e : s) labels.push_back(a.label(e));
  }
  return FiniteAlgebra(sig, s.size(), std::move(tables), std::move(labels));
}

FiniteAlgebra direct_power(const FiniteAlgebra& a, std::size_t n, const Budget& budget) {
  std::size_t m = checked_power(a.size(), n, budget.carrier_limit);
  const Signature& sig = a.signature();
  std::vector<std::vector<Elem>> tables(sig.size());
  std::vector<std::size_t> weight(n, 1);
  for (std::size_t c = n; c-- > 1;) weight[c - 1] = weight[c] * a.size();
  auto coord = [&](std::size_t code, std::size_t c) {
    return static_cast<Elem>((code / weight[c]) % a.size());
  };
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    tables[op].reserve(checked_power(m, k, budget.table_limit));
    std::vector<Elem> args(k);
    detail::for_each_tuple(m, k, [&](const std::vector<std::size_t>& t) {
      std::size_t code = 0;
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t j = 0; j < k; ++j) args[j] = coord(t[j], c);
        code = code * a.size() + a.apply(op, args);
      }
      tables[op].push_back(static_cast<Elem>(code));
      return true;
    });
  }
  return FiniteAlgebra(sig, m, std::move(tables));
}

std::vector<ElementSet> enumerate_subuniverses(const FiniteAlgebra& a, const Budget& budget) {
  // Every subuniverse is reached from Sg(empty) by adding one element at a time.
  std::set<ElementSet> seen;
  std::vector<ElementSet> frontier{generate_subalgebra(a, {}, budget)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& s : frontier) {
      std::vector<bool> in(a.size(), false);
      for (Elem e : s) in[e] = true;
      for (Elem e = 0; e < a.size(); ++e) {
        if (in[e]) continue;
        ElementSet seeds = s;
        seeds.push_back(e);
        ElementSet t = generate_subalgebra(a, seeds, budget);
        if (seen.insert(t).second) {
          if (seen.size() > budget.closure_limit) throw BudgetError("too many subuniverses");
          next.push_back(std::move(t));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<ElementSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const ElementSet& x, const ElementSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

ElementSet generating_set(const FiniteAlgebra& a) {
  ElementSet gens;
  std::vector<bool> covered(a.size(), false);
  for (Elem e : generate_subalgebra(a, {})) covered[e] = true;
  for (Elem e = 0; e < a.size(); ++e) {
    if (covered[e]) continue;
    gens.push_back(e);
    for (Elem x : generate_subalgebra(a, gens)) covered[x] = true;
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    ElementSet rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (generate_subalgebra(a, rest).size() == a.size()) gens = std::move(rest);
  }
  return gens;
}

FiniteAlgebra reduct(const FiniteAlgebra& a, const std::vector<std::string>& ops) {
  std::vector<Operation> sig;
  std::vector<std::vector<Elem>> tables;
  for (const auto& name : ops) {
    std::size_t i = a.signature().index_of(name);
    sig.push_back(a.signature()[i]);
    tables.push_back(a.table(i));
  }
  return FiniteAlgebra(Signature(std::move(sig)), a.size(), std::move(tables), a.labels());
}

}  // namespace natdual
