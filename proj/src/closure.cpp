#include "natdual/detail/closure.hpp"

#include <string>

namespace natdual::detail {

bool for_each_tuple(std::size_t n, std::size_t k,
                    const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> t(k, 0);
  if (k > 0 && n == 0) return true;
  while (true) {
    if (!f(t)) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++t[i] < n) break;
      t[i] = 0;
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

bool for_each_tuple_containing(std::size_t p, std::size_t k,
                               const std::function<bool(const std::vector<std::size_t>&)>& f) {
  // Split by the position i of the first occurrence of p.
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && p == 0) break;  // nothing below 0
    std::vector<std::size_t> limit(k);
    for (std::size_t j = 0; j < k; ++j) limit[j] = j < i ? p : p + 1;
    for (std::size_t j = 0; j < k; ++j) t[j] = 0;
    t[i] = p;
    while (true) {
      if (!f(t)) return false;
      std::size_t j = k;
      bool done = true;
      while (j > 0) {
        --j;
        if (j == i) continue;
        if (++t[j] < limit[j]) {
          done = false;
          break;
        }
        t[j] = 0;
      }
      if (done) break;
    }
  }
  return true;
}

std::pair<std::size_t, bool> PointwiseClosure::add(std::vector<Elem> v, Derivation d) {
  if (auto it = index_.find(v); it != index_.end()) return {it->second, false};
  if (items_.size() >= budget_.closure_limit) {
    throw BudgetError("closure exceeds " + std::to_string(budget_.closure_limit) + " items");
  }
  std::size_t idx = items_.size();
  index_.emplace(v, idx);
  items_.push_back(std::move(v));
  derivs_.push_back(std::move(d));
  return {idx, true};
}

std::optional<std::size_t> PointwiseClosure::find(const std::vector<Elem>& v) const {
  if (auto it = index_.find(v); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<Elem> PointwiseClosure::apply(std::size_t op,
                                          const std::vector<std::size_t>& args) const {
  std::vector<Elem> out(width_);
  std::vector<Elem> a(args.size());
  for (std::size_t c = 0; c < width_; ++c) {
    for (std::size_t j = 0; j < args.size(); ++j) a[j] = items_[args[j]][c];
    out[c] = base_.apply(op, a);
  }
  return out;
}

bool PointwiseClosure::run(const std::function<bool(std::size_t)>& stop) {
  const Signature& sig = base_.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    if (sig[op].arity != 0) continue;
    auto [idx, fresh] = add(apply(op, {}), Derivation{op, 0, {}});
    if (fresh && stop && stop(idx)) return true;
  }
  bool stopped = false;
  for (std::size_t p = 0; p < items_.size() && !stopped; ++p) {
    for (std::size_t op = 0; op < sig.size() && !stopped; ++op) {
      std::size_t k = sig[op].arity;
      if (k == 0) continue;
      for_each_tuple_containing(p, k, [&](const std::vector<std::size_t>& args) {
        auto [idx, fresh] = add(apply(op, args), Derivation{op, 0, args});
        if (fresh && stop && stop(idx)) {
          stopped = true;
          return false;
        }
        return true;
      });
    }
  }
  return stopped;
}

}  // namespace natdual::detail
