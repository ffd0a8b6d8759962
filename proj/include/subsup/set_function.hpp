#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "subsup/subset.hpp"

namespace subsup {

struct GroundSet {
  int size = 0;
  std::vector<std::string> labels;  // optional; empty or exactly `size` entries

  GroundSet() = default;
  explicit GroundSet(int n, std::vector<std::string> lbls = {}) : size(n), labels(std::move(lbls)) {
    if (size < 1) throw std::invalid_argument("GroundSet: size must be >= 1");
    if (!labels.empty() && static_cast<int>(labels.size()) != size)
      throw std::invalid_argument("GroundSet: label count mismatch");
  }

  std::string label(int v) const {
    if (v < 0 || v >= size) throw std::out_of_range("GroundSet::label");
    return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)];
  }

  Subset empty_set() const { return Subset(size); }

  Subset full_set() const {
    Subset s(size);
    for (int v = 0; v < size; ++v) s.add(v);
    return s;
  }
};

enum class FnKind { objective, cost };

// Black-box oracle for a grounded real-valued set function. Evaluation is
// assumed deterministic; results are memoized. The cache is the only shared
// mutable state and is guarded so concurrent workers see serialized updates.
class SetFunction {
 public:
  using Eval = std::function<double(const Subset&)>;
  using MarginalFn = std::function<double(int, const Subset&)>;

  SetFunction(GroundSet ground, FnKind kind, Eval eval)
      : ground_(std::move(ground)),
        kind_(kind),
        eval_(std::move(eval)),
        cache_(std::make_unique<Cache>()) {
    if (!eval_) throw std::invalid_argument("SetFunction: null evaluator");
    double at_empty = eval_(ground_.empty_set());
    if (at_empty != 0.0)
      throw std::invalid_argument("SetFunction: not grounded, value(empty) = " +
                                  std::to_string(at_empty));
  }

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.size; }
  FnKind kind() const { return kind_; }

  double value(const Subset& s) const {
    check_subset(s);
    {
      std::shared_lock lock(cache_->mu);
      auto it = cache_->memo.find(s);
      if (it != cache_->memo.end()) return it->second;
    }
    double v = eval_(s);
    {
      std::unique_lock lock(cache_->mu);
      cache_->memo.emplace(s, v);
    }
    return v;
  }

  double value_uncached(const Subset& s) const {
    check_subset(s);
    return eval_(s);
  }

  // Mask evaluation for exhaustive kernels; universe must fit 64 bits.
  double value_mask(std::uint64_t mask) const {
    return eval_(Subset::from_mask(mask, ground_.size));
  }

  // f(v | S) = f(S + v) - f(S). Rejects v already in S. Uses the family's
  // direct marginal when one was provided (algebraically equal, avoids
  // evaluating the extended set from scratch).
  double marginal(int v, const Subset& s) const {
    check_subset(s);
    if (s.contains(v)) throw std::invalid_argument("SetFunction::marginal: element already in set");
    if (marginal_) return marginal_(v, s);
    return value(s.with(v)) - value(s);
  }

  void set_marginal_fn(MarginalFn m) { marginal_ = std::move(m); }
  bool has_marginal_fn() const { return static_cast<bool>(marginal_); }

  std::size_t cache_size() const {
    std::shared_lock lock(cache_->mu);
    return cache_->memo.size();
  }

 private:
  struct Cache {
    mutable std::shared_mutex mu;
    std::unordered_map<Subset, double, SubsetHash> memo;
  };

  void check_subset(const Subset& s) const {
    if (s.universe_size() != ground_.size)
      throw std::invalid_argument("SetFunction: subset universe mismatch");
  }

  GroundSet ground_;
  FnKind kind_;
  Eval eval_;
  MarginalFn marginal_;
  std::unique_ptr<Cache> cache_;
};

// Dense table of f over all 2^n subsets, indexed by bitmask. Entries are
// independent, so the parallel build is bit-identical to the serial one.
std::vector<double> build_value_table(const SetFunction& fn);
std::vector<double> build_value_table_serial(const SetFunction& fn);

}  // namespace subsup
