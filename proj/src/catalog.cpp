#include "natdual/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

#include "natdual/detail/closure.hpp"

namespace natdual::catalog {

namespace {

using Fn = std::function<Elem(const std::vector<Elem>&)>;

FiniteAlgebra tabulate(std::size_t n, const std::vector<std::pair<Operation, Fn>>& ops,
                       std::vector<std::string> labels) {
  std::vector<Operation> sig;
  std::vector<std::vector<Elem>> tables;
  for (const auto& [op, fn] : ops) {
    sig.push_back(op);
    std::vector<Elem> table;
    std::vector<Elem> args(op.arity);
    detail::for_each_tuple(n, op.arity, [&](const std::vector<std::size_t>& t) {
      for (std::size_t j = 0; j < t.size(); ++j) args[j] = static_cast<Elem>(t[j]);
      table.push_back(fn(args));
      return true;
    });
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(Signature(std::move(sig)), n, std::move(tables), std::move(labels));
}

Fn meet = [](const std::vector<Elem>& a) { return std::min(a[0], a[1]); };
Fn join = [](const std::vector<Elem>& a) { return std::max(a[0], a[1]); };

Fn constant(Elem c) {
  return [c](const std::vector<Elem>&) { return c; };
}

std::vector<std::pair<Operation, Fn>> chain_ops(int n, bool with_neg) {
  Elem top = static_cast<Elem>(n);
  std::vector<std::pair<Operation, Fn>> ops{
      {{"meet", 2}, meet},
      {{"join", 2}, join},
      {{"oplus", 2}, [top](const std::vector<Elem>& a) { return std::min(a[0] + a[1], top); }},
      {{"odot", 2},
       [top](const std::vector<Elem>& a) { return a[0] + a[1] > top ? a[0] + a[1] - top : 0u; }},
  };
  if (with_neg) {
    ops.push_back({{"neg", 1}, [top](const std::vector<Elem>& a) { return top - a[0]; }});
  }
  ops.push_back({{"bot", 0}, constant(0)});
  ops.push_back({{"top", 0}, constant(top)});
  return ops;
}

std::vector<std::string> chain_labels(int n) {
  std::vector<std::string> l;
  for (int i = 0; i <= n; ++i) l.push_back(rational_label(static_cast<Elem>(i), n));
  return l;
}

void check_n(int n) {
  if (n < 1) throw InputError("chain parameter must be at least 1");
  if (n > 64) throw InputError("chain parameter above 64 is not supported");
}

}  // namespace

FiniteAlgebra bool2() {
  return tabulate(2,
                  {{{"meet", 2}, meet},
                   {{"join", 2}, join},
                   {{"neg", 1}, [](const std::vector<Elem>& a) { return 1u - a[0]; }},
                   {{"bot", 0}, constant(0)},
                   {{"top", 0}, constant(1)}},
                  {"0", "1"});
}

FiniteAlgebra dl2() {
  return tabulate(
      2, {{{"meet", 2}, meet}, {{"join", 2}, join}, {{"bot", 0}, constant(0)}, {{"top", 0}, constant(1)}},
      {"0", "1"});
}

FiniteAlgebra lattice2() {
  return tabulate(2, {{{"meet", 2}, meet}, {{"join", 2}, join}}, {"0", "1"});
}

FiniteAlgebra luk(int n) {
  check_n(n);
  return tabulate(static_cast<std::size_t>(n) + 1, chain_ops(n, true), chain_labels(n));
}

FiniteAlgebra posluk(int n) {
  check_n(n);
  return tabulate(static_cast<std::size_t>(n) + 1, chain_ops(n, false), chain_labels(n));
}

Rational value_of(Elem i, int n) {
  long g = std::gcd(static_cast<long>(i), static_cast<long>(n));
  if (g == 0) g = 1;
  return {static_cast<long>(i) / g, n / g};
}

std::string rational_label(Elem i, int n) {
  Rational r = value_of(i, n);
  if (r.num == 0) return "0";
  if (r.num == r.den) return "1";
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

FiniteAlgebra build(std::string_view name) {
  if (name == "bool2") return bool2();
  if (name == "dl2") return dl2();
  if (name == "lattice2") return lattice2();
  for (std::string_view stem : {"luk", "posluk"}) {
    if (name.size() <= stem.size() || name.substr(0, stem.size()) != stem) continue;
    std::string_view digits = name.substr(stem.size());
    if (digits.size() > 2 && digits.front() == '(' && digits.back() == ')') {
      digits = digits.substr(1, digits.size() - 2);
    } else if (digits.front() < '0' || digits.front() > '9') {
      continue;
    }
    int n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InputError("bad parameter in '" + std::string(name) + "'");
    }
    return stem == "luk" ? luk(n) : posluk(n);
  }
  throw InputError("unknown dualizer '" + std::string(name) + "'");
}

std::vector<std::string> names() { return {"bool2", "dl2", "lattice2", "luk(n)", "posluk(n)"}; }

bool check_hyperarchimedean(const FiniteAlgebra& a) {
  auto plus = a.signature().find("oplus");
  if (!plus || a.signature()[*plus].arity != 2) throw InputError("hyperarchimedean check needs oplus");
  for (Elem x = 0; x < a.size(); ++x) {
    Elem y = x;
    bool found = false;
    for (std::size_t step = 0; step <= a.size(); ++step) {
      if (a.apply(*plus, {y, y}) == y) {
        found = true;
        break;
      }
      y = a.apply(*plus, {y, x});
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace natdual::catalog
