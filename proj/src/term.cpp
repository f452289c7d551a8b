#include "natdual/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "natdual/detail/closure.hpp"
#include "natdual/subpower.hpp"

namespace natdual {

struct Term::Node {
  bool is_var = false;
  std::size_t var = 0;
  std::string op;
  std::vector<Term> args;
  std::size_t bound = 0;
};

Term Term::var(std::size_t i) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->var = i;
  n->bound = i + 1;
  return Term(std::move(n));
}

Term Term::apply(std::string op, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->op = std::move(op);
  for (const auto& a : args) n->bound = std::max(n->bound, a.variable_bound());
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_variable() const { return node_->is_var; }
std::size_t Term::variable() const { return node_->var; }
const std::string& Term::op() const { return node_->op; }
const std::vector<Term>& Term::args() const { return node_->args; }
std::size_t Term::variable_bound() const { return node_->bound; }

std::string Term::to_string() const {
  if (is_variable()) return "x" + std::to_string(variable());
  std::string s = "(" + op();
  for (const auto& a : args()) s += " " + a.to_string();
  return s + ")";
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) return a.variable() == b.variable();
  return a.op() == b.op() && a.args() == b.args();
}

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view s) : s_(s) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("term parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }
  Term parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      skip_ws();
      std::string op = ident();
      std::vector<Term> args;
      while (true) {
        skip_ws();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        args.push_back(parse());
      }
      return Term::apply(std::move(op), std::move(args));
    }
    std::size_t start = pos_;
    std::string name = ident();
    if (name.size() < 2 || name[0] != 'x' ||
        !std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(c); })) {
      pos_ = start;
      fail("expected a variable x<N> or '('");
    }
    return Term::var(std::stoul(name.substr(1)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::size_t checked_op(const FiniteAlgebra& l, const Term& t) {
  auto i = l.signature().find(t.op());
  if (!i) throw InputError("operation '" + t.op() + "' not in the signature");
  if (l.signature()[*i].arity != t.args().size()) {
    throw InputError("operation '" + t.op() + "' applied to " + std::to_string(t.args().size()) +
                     " arguments, arity is " + std::to_string(l.signature()[*i].arity));
  }
  return *i;
}

}  // namespace

Term Term::parse(std::string_view text) { return TermParser(text).parse_all(); }

Elem eval_term(const FiniteAlgebra& l, const Term& t, std::span<const Elem> env) {
  if (t.is_variable()) {
    if (t.variable() >= env.size()) {
      throw InputError("unbound variable x" + std::to_string(t.variable()));
    }
    return env[t.variable()];
  }
  std::size_t op = checked_op(l, t);
  std::vector<Elem> vals;
  vals.reserve(t.args().size());
  for (const auto& a : t.args()) vals.push_back(eval_term(l, a, env));
  return l.apply(op, vals);
}

Elem TermFunction::at(std::span<const Elem> args, std::size_t base) const {
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * base + a;
  return table[idx];
}

TermFunction term_function(const FiniteAlgebra& l, const Term& t, std::size_t arity) {
  if (t.variable_bound() > arity) {
    throw InputError("term uses x" + std::to_string(t.variable_bound() - 1) + " but arity is " +
                     std::to_string(arity));
  }
  std::size_t rows = checked_power(l.size(), arity, Budget{}.table_limit);
  // Tables per node, shared subterms computed once.
  std::unordered_map<const void*, std::vector<Elem>> memo;
  std::function<const std::vector<Elem>&(const Term&)> tab = [&](const Term& s)
      -> const std::vector<Elem>& {
    if (auto it = memo.find(s.id()); it != memo.end()) return it->second;
    std::vector<Elem> out(rows);
    if (s.is_variable()) {
      for (std::size_t r = 0; r < rows; ++r) {
        out[r] = decode(r, l.size(), arity)[s.variable()];
      }
    } else {
      std::size_t op = checked_op(l, s);
      std::vector<const std::vector<Elem>*> kids;
      for (const auto& a : s.args()) kids.push_back(&tab(a));
      std::vector<Elem> args(kids.size());
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < kids.size(); ++j) args[j] = (*kids[j])[r];
        out[r] = l.apply(op, args);
      }
    }
    return memo.emplace(s.id(), std::move(out)).first->second;
  };
  return TermFunction{arity, tab(t), t};
}

namespace {

// Near-unanimous argument tuples with their required value, in the order
// a = 0.., then position, then b.
std::vector<std::pair<std::vector<Elem>, Elem>> nu_tuples(std::size_t n, std::size_t arity) {
  std::vector<std::pair<std::vector<Elem>, Elem>> out;
  for (Elem a = 0; a < n; ++a) {
    out.emplace_back(std::vector<Elem>(arity, a), a);
    for (std::size_t i = 0; i < arity; ++i) {
      for (Elem b = 0; b < n; ++b) {
        if (b == a) continue;
        std::vector<Elem> t(arity, a);
        t[i] = b;
        out.emplace_back(std::move(t), a);
      }
    }
  }
  return out;
}

}  // namespace

NuCheck check_near_unanimity(const FiniteAlgebra& l, const TermFunction& f) {
  if (f.arity < 3) throw InputError("near-unanimity needs arity at least 3");
  for (const auto& [t, want] : nu_tuples(l.size(), f.arity)) {
    if (f.at(t, l.size()) != want) return {false, t};
  }
  return {};
}

std::optional<TermFunction> search_nu_function(const FiniteAlgebra& l, std::size_t arity,
                                               const Budget& budget) {
  if (arity < 3) throw InputError("near-unanimity needs arity at least 3");
  auto coords = nu_tuples(l.size(), arity);
  std::vector<Elem> target;
  for (const auto& c : coords) target.push_back(c.second);

  detail::PointwiseClosure cl(l, coords.size(), budget);
  for (std::size_t i = 0; i < arity; ++i) {
    std::vector<Elem> proj;
    for (const auto& c : coords) proj.push_back(c.first[i]);
    cl.add(std::move(proj), detail::Derivation{detail::Derivation::npos, i, {}});
  }
  std::optional<std::size_t> hit = cl.find(target);
  if (!hit) {
    cl.run([&](std::size_t idx) {
      if (cl.items()[idx] == target) {
        hit = idx;
        return true;
      }
      return false;
    });
  }
  if (!hit) return std::nullopt;

  std::vector<std::optional<Term>> terms(cl.items().size());
  std::function<Term(std::size_t)> build = [&](std::size_t idx) -> Term {
    if (terms[idx]) return *terms[idx];
    const auto& d = cl.derivations()[idx];
    Term t = Term::var(0);
    if (d.op == detail::Derivation::npos) {
      t = Term::var(d.seed);
    } else {
      std::vector<Term> kids;
      for (std::size_t a : d.args) kids.push_back(build(a));
      t = Term::apply(l.signature()[d.op].name, std::move(kids));
    }
    terms[idx] = t;
    return t;
  };
  TermFunction f = term_function(l, build(*hit), arity);
  if (!check_near_unanimity(l, f).holds) {
    throw std::logic_error("clone search produced a non-NU witness");
  }
  return f;
}

FreeAlgebra free_algebra(const FiniteAlgebra& l, std::size_t n, const Budget& budget) {
  std::size_t rows = checked_power(l.size(), n, budget.carrier_limit);
  std::vector<FunctionVector> gens(n, FunctionVector(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    auto t = decode(r, l.size(), n);
    for (std::size_t i = 0; i < n; ++i) gens[i][r] = t[i];
  }
  FreeAlgebra out;
  out.members = generate_subpower(l, rows, gens, budget);
  out.algebra = subpower_algebra(l, out.members, budget);
  for (const auto& g : gens) {
    auto it = std::lower_bound(out.members.begin(), out.members.end(), g);
    out.generators.push_back(static_cast<Elem>(it - out.members.begin()));
  }
  return out;
}

FreeAlgebra free_one_generated(const FiniteAlgebra& l, const Budget& budget) {
  return free_algebra(l, 1, budget);
}

Term separating_term_posmv(int n, Elem a, Elem b) {
  if (n < 1) throw InputError("chain parameter must be at least 1");
  const Elem top = static_cast<Elem>(n);
  if (a > top || b > top) throw InputError("element outside the chain");
  if (!(b < a)) throw InputError("separating term needs b < a");
  auto twice = [](const Term& t, const char* op) { return Term::apply(op, {t, t}); };
  Term t = Term::var(0);
  // Compare against 1/2 as 2i vs n to stay in integers.
  while (!(a == top && b < top)) {
    if (2 * a <= top) {
      t = twice(t, "oplus");
      a = std::min(2 * a, top);
      b = std::min(2 * b, top);
    } else if (2 * b >= top) {
      t = twice(t, "odot");
      a = 2 * a - top;
      b = 2 * b - top;
    } else {
      t = twice(t, "oplus");
      a = top;
      b = 2 * b;
    }
  }
  // b^m = max(m b - (m-1) n, 0); pick the least m with b^m = 0.
  std::size_t m = 1;
  while (static_cast<long>(m) * b - static_cast<long>(m - 1) * top > 0) ++m;
  Term p = t;
  for (std::size_t i = 1; i < m; ++i) p = Term::apply("odot", {p, t});
  return p;
}

bool is_convex(const FiniteAlgebra& l, const TermFunction& m, const ElementSet& set,
               std::optional<ElementSet> ambient) {
  if (!check_near_unanimity(l, m).holds) throw InputError("convexity needs an NU operation");
  ElementSet amb = ambient ? *ambient : ElementSet{};
  if (!ambient) {
    for (Elem e = 0; e < l.size(); ++e) amb.push_back(e);
  }
  std::vector<bool> in(l.size(), false);
  for (Elem e : set) in[e] = true;
  const std::size_t k = m.arity;
  std::vector<Elem> args(k);
  for (std::size_t out = 0; out < k; ++out) {
    bool ok = detail::for_each_tuple(set.size(), k - 1, [&](const std::vector<std::size_t>& t) {
      for (Elem x : amb) {
        for (std::size_t j = 0, r = 0; j < k; ++j) args[j] = j == out ? x : set[t[r++]];
        if (!in[m.at(args, l.size())]) return false;
      }
      return true;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace natdual
