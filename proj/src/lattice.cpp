#include "infocausal/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "infocausal/errors.hpp"

namespace infocausal {

IndexSet::IndexSet(std::initializer_list<std::size_t> indices) {
  for (std::size_t i : indices) mask_ |= single(i).mask_;
}

IndexSet IndexSet::single(std::size_t index) {
  if (index >= kCapacity) {
    throw InputError("index " + std::to_string(index) + " exceeds set capacity 64");
  }
  return IndexSet(std::uint64_t{1} << index);
}

IndexSet IndexSet::range(std::size_t n) {
  if (n > kCapacity) throw InputError("range exceeds set capacity 64");
  return IndexSet(n == kCapacity ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

IndexSet IndexSet::from_indices(const std::vector<std::size_t>& indices) {
  IndexSet out;
  for (std::size_t i : indices) out = out.with(i);
  return out;
}

std::vector<std::size_t> IndexSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (std::size_t i : *this) out.push_back(i);
  return out;
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first_item = true;
  for (std::size_t i : *this) {
    if (!first_item) os << ',';
    os << i;
    first_item = false;
  }
  os << '}';
  return os.str();
}

void for_each_subset(IndexSet of, const std::function<void(IndexSet)>& fn) {
  // Enumerate submasks in increasing order.
  const std::uint64_t full = of.mask();
  std::uint64_t sub = 0;
  while (true) {
    fn(IndexSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

std::vector<IndexSet> subsets_of_size(IndexSet pool, std::size_t k) {
  const std::vector<std::size_t> items = pool.members();
  std::vector<IndexSet> out;
  if (k > items.size()) return out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    IndexSet s;
    for (std::size_t p : pick) s = s.with(items[p]);
    out.push_back(s);
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == items.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

GroundSet::GroundSet(std::vector<std::string> labels) {
  for (auto& l : labels) add(std::move(l));
}

const std::string& GroundSet::label(std::size_t index) const {
  if (index >= labels_.size()) {
    throw InputError("unknown observation index " + std::to_string(index));
  }
  return labels_[index];
}

std::size_t GroundSet::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("unknown observation '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t GroundSet::add(std::string label) {
  if (std::find(labels_.begin(), labels_.end(), label) != labels_.end()) {
    throw InputError("duplicate observation identifier '" + label + "'");
  }
  if (labels_.size() >= IndexSet::kCapacity) {
    throw InputError("ground set limited to 64 observations");
  }
  labels_.push_back(std::move(label));
  return labels_.size() - 1;
}

}  // namespace infocausal
