#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace orbi {

/// Prime factorization by trial division as (prime, exponent) pairs,
/// primes ascending. Inputs here are multiplicities, so small.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t x) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= x; ++p) {
    int e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (x > 1) out.emplace_back(x, 1);
  return out;
}

inline int valuation(std::int64_t x, std::int64_t p) {
  int e = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

/// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace orbi
