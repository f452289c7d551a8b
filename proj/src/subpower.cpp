#include "natdual/subpower.hpp"

#include <algorithm>
#include <set>

#include "natdual/detail/closure.hpp"

namespace natdual {

std::vector<FunctionVector> generate_subpower(const FiniteAlgebra& l, std::size_t dim,
                                              const std::vector<FunctionVector>& seeds,
                                              const Budget& budget) {
  detail::PointwiseClosure cl(l, dim, budget);
  for (const auto& s : seeds) {
    if (s.size() != dim) throw InputError("seed has wrong length");
    for (Elem e : s) {
      if (e >= l.size()) throw InputError("seed value outside the carrier");
    }
    cl.add(s, {});
  }
  cl.run();
  std::vector<FunctionVector> out = cl.items();
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subpower(const FiniteAlgebra& l, std::size_t dim, const std::vector<FunctionVector>& s) {
  std::set<FunctionVector> in(s.begin(), s.end());
  for (const auto& f : s) {
    if (f.size() != dim) return false;
    for (Elem e : f) {
      if (e >= l.size()) return false;
    }
  }
  const Signature& sig = l.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    std::vector<Elem> args(k);
    FunctionVector r(dim);
    bool ok = detail::for_each_tuple(s.size(), k, [&](const std::vector<std::size_t>& t) {
      for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t j = 0; j < k; ++j) args[j] = s[t[j]][c];
        r[c] = l.apply(op, args);
      }
      return in.count(r) > 0;
    });
    if (!ok) return false;
  }
  return true;
}

FiniteAlgebra subpower_algebra(const FiniteAlgebra& l, const std::vector<FunctionVector>& members,
                               const Budget& budget) {
  if (!std::is_sorted(members.begin(), members.end())) throw InputError("members not sorted");
  std::size_t dim = members.empty() ? 0 : members.front().size();
  std::unordered_map<FunctionVector, Elem, detail::VectorHash> pos;
  for (std::size_t i = 0; i < members.size(); ++i) pos.emplace(members[i], static_cast<Elem>(i));
  const Signature& sig = l.signature();
  std::vector<std::vector<Elem>> tables(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    std::size_t k = sig[op].arity;
    tables[op].reserve(checked_power(members.size(), k, budget.table_limit));
    std::vector<Elem> args(k);
    FunctionVector r(dim);
    detail::for_each_tuple(members.size(), k, [&](const std::vector<std::size_t>& t) {
      for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t j = 0; j < k; ++j) args[j] = members[t[j]][c];
        r[c] = l.apply(op, args);
      }
      auto it = pos.find(r);
      if (it == pos.end()) throw InputError("members are not closed under '" + sig[op].name + "'");
      tables[op].push_back(it->second);
      return true;
    });
  }
  std::vector<std::string> labels;
  for (const auto& m : members) labels.push_back(format_vector(l, m));
  return FiniteAlgebra(sig, members.size(), std::move(tables), std::move(labels));
}

std::vector<FunctionVector> all_functions(std::size_t base, std::size_t dim, const Budget& budget) {
  std::size_t m = checked_power(base, dim, budget.carrier_limit);
  std::vector<FunctionVector> out;
  out.reserve(m);
  for (std::size_t c = 0; c < m; ++c) out.push_back(decode(c, base, dim));
  return out;
}

std::uint64_t encode(const FunctionVector& f, std::size_t base) {
  std::uint64_t c = 0;
  for (Elem e : f) c = c * base + e;
  return c;
}

FunctionVector decode(std::uint64_t code, std::size_t base, std::size_t dim) {
  FunctionVector f(dim);
  for (std::size_t i = dim; i-- > 0;) {
    f[i] = static_cast<Elem>(code % base);
    code /= base;
  }
  return f;
}

FunctionVector restrict_to(const FunctionVector& f, const std::vector<std::size_t>& coords) {
  FunctionVector r;
  r.reserve(coords.size());
  for (std::size_t c : coords) r.push_back(f[c]);
  return r;
}

std::vector<FunctionVector> project(const std::vector<FunctionVector>& s,
                                    const std::vector<std::size_t>& coords) {
  std::set<FunctionVector> out;
  for (const auto& f : s) out.insert(restrict_to(f, coords));
  return {out.begin(), out.end()};
}

std::string format_vector(const FiniteAlgebra& l, const FunctionVector& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += l.label(f[i]);
  }
  return s + ")";
}

}  // namespace natdual
