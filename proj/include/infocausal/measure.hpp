#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "infocausal/lattice.hpp"

namespace infocausal {

/// Whether a measure is exactly monotone and submodular, or only up to slack.
struct Exactness {
  enum class Kind { kExactSubmodular, kApproximate };

  Kind kind = Kind::kExactSubmodular;
  double slack = 0.0;

  static Exactness exact() { return {Kind::kExactSubmodular, 0.0}; }
  static Exactness approximate(double slack) { return {Kind::kApproximate, slack}; }
  bool is_exact() const { return kind == Kind::kExactSubmodular; }
};

/// Evaluator R from lattice elements (joins of ground observations) to
/// nonnegative reals, normalized so that R(empty) = 0.
///
/// Implementations must be pure: evaluate() may be called concurrently.
class InformationMeasure {
 public:
  virtual ~InformationMeasure() = default;

  virtual std::string name() const = 0;
  virtual std::size_t ground_size() const = 0;
  virtual Exactness exactness() const = 0;

  /// R(s). Callers go through joint_info(), which validates `s`.
  virtual double evaluate(Element s) const = 0;

  /// Exact-arithmetic test of I(s:t|u) == 0, for measures that can decide it
  /// without rounding (e.g. integer identities before a logarithm).
  virtual std::optional<bool> exactly_independent(Element /*s*/, Element /*t*/,
                                                  Element /*u*/) const {
    return std::nullopt;
  }
};

/// Session wrapper that memoizes R per element.
///
/// Safe for concurrent evaluate(); a cached value is always the value the
/// wrapped measure returns, so memoization never changes results.
class CachedMeasure final : public InformationMeasure {
 public:
  explicit CachedMeasure(std::shared_ptr<const InformationMeasure> inner);

  std::string name() const override { return inner_->name(); }
  std::size_t ground_size() const override { return inner_->ground_size(); }
  Exactness exactness() const override { return inner_->exactness(); }
  double evaluate(Element s) const override;
  std::optional<bool> exactly_independent(Element s, Element t, Element u) const override {
    return inner_->exactly_independent(s, t, u);
  }

  std::size_t cache_size() const;
  const InformationMeasure& inner() const { return *inner_; }

 private:
  std::shared_ptr<const InformationMeasure> inner_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint64_t, double> cache_;
};

/// Thresholded independence statement: independent iff cmi_value <= threshold.
struct IndependenceDecision {
  double cmi_value = 0.0;
  double threshold = 0.0;
  bool independent = true;
};

/// R(s). Throws InputError when `s` names an index outside the ground set.
double joint_info(const InformationMeasure& m, Element s);

/// R(s|t) = R(s v t) - R(t).
double cond_info(const InformationMeasure& m, Element s, Element t);

/// I(s:t|u) = R(s,u) + R(t,u) - R(s,t,u) - R(u), evaluated in exactly that
/// order of operations.
double cond_mutual_info(const InformationMeasure& m, Element s, Element t, Element u);

inline double mutual_info(const InformationMeasure& m, Element s, Element t) {
  return cond_mutual_info(m, s, t, Element{});
}

IndependenceDecision decide_independence(const InformationMeasure& m, Element s, Element t,
                                         Element u, double threshold);

/// The threshold rule on a precomputed value.
IndependenceDecision make_decision(double cmi_value, double threshold);

}  // namespace infocausal
