#include "infocausal/measure.hpp"

#include <mutex>

#include "infocausal/errors.hpp"

namespace infocausal {

CachedMeasure::CachedMeasure(std::shared_ptr<const InformationMeasure> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw InputError("CachedMeasure requires a measure");
}

double CachedMeasure::evaluate(Element s) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(s.mask());
    if (it != cache_.end()) return it->second;
  }
  // Evaluated outside the lock; two racing threads compute the same value.
  const double value = inner_->evaluate(s);
  std::unique_lock lock(mutex_);
  cache_.emplace(s.mask(), value);
  return value;
}

std::size_t CachedMeasure::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

double joint_info(const InformationMeasure& m, Element s) {
  if (s.span() > m.ground_size()) {
    throw InputError("element " + s.to_string() + " outside ground set of size " +
                     std::to_string(m.ground_size()));
  }
  if (s.empty()) return 0.0;
  return m.evaluate(s);
}

double cond_info(const InformationMeasure& m, Element s, Element t) {
  return joint_info(m, s | t) - joint_info(m, t);
}

double cond_mutual_info(const InformationMeasure& m, Element s, Element t, Element u) {
  return joint_info(m, s | u) + joint_info(m, t | u) - joint_info(m, s | t | u) -
         joint_info(m, u);
}

IndependenceDecision make_decision(double cmi_value, double threshold) {
  if (!(threshold >= 0.0)) throw InputError("independence threshold must be >= 0");
  return {cmi_value, threshold, cmi_value <= threshold};
}

IndependenceDecision decide_independence(const InformationMeasure& m, Element s, Element t,
                                         Element u, double threshold) {
  return make_decision(cond_mutual_info(m, s, t, u), threshold);
}

}  // namespace infocausal
