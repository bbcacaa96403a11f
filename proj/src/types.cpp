#include "gesp/types.hpp"

#include <algorithm>
#include <numeric>

#include "gesp/errors.hpp"

namespace gesp {

IndexSet::IndexSet(std::vector<std::size_t> sorted_indices) : indices_(std::move(sorted_indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw InvalidInput("IndexSet: indices must be strictly increasing");
    }
  }
}

IndexSet IndexSet::from_unsorted(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  return IndexSet(std::move(indices));
}

IndexSet IndexSet::range(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return IndexSet(std::move(all));
}

bool IndexSet::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::size_t overlap(const IndexSet& a, const IndexSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

}  // namespace gesp
