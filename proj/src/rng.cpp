#include "csc/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace csc {

std::vector<int> CounterRng::sample_without_replacement(int n, int k) const {
  if (k < 0 || k > n)
    throw std::invalid_argument("sample_without_replacement: need 0 <= k <= n");
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<int>(below(static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(n - i))) +
                   i;
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace csc
