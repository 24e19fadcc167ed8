#pragma once

// Shared enumeration and generation helpers for the test suites. Brute-force
// enumerators here serve as independent oracles and must stay independent of
// the library's construction paths.

#include <algorithm>
#include <random>
#include <vector>

#include "ccel/structure.hpp"

namespace testutil {

// All convex partitions of {0..n-1}: one per cut set (2^(n-1)).
inline std::vector<ccel::Partition> all_convex_partitions(int n) {
  std::vector<ccel::Partition> out;
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> cur{0};
    for (int e = 1; e < n; ++e) {
      if (mask & (1 << (e - 1))) {
        blocks.push_back(cur);
        cur.clear();
      }
      cur.push_back(e);
    }
    blocks.push_back(cur);
    out.push_back(ccel::Partition::from_blocks(n, std::move(blocks)));
  }
  return out;
}

// All partitions of {0..n-1} via restricted growth strings.
inline std::vector<ccel::Partition> all_partitions(int n) {
  std::vector<ccel::Partition> out;
  std::vector<int> rgs(n, 0);
  for (;;) {
    int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks(k);
    for (int e = 0; e < n; ++e) blocks[rgs[e]].push_back(e);
    out.push_back(ccel::Partition::from_blocks(n, std::move(blocks)));
    int i = n - 1;
    for (; i > 0; --i) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      rgs[i] = 0;
    }
    if (i == 0) break;
  }
  return out;
}

// Monotone boolean matrix: columns are nested initial segments, increasing
// in the column index.
inline std::vector<int> random_monotone_heights(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, n);
  std::vector<int> h(n);
  for (int y = 0; y < n; ++y) h[y] = d(rng);
  std::sort(h.begin(), h.end());
  return h;  // column y = {0..h[y]-1}
}

inline std::vector<int> random_function(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, n - 1);
  std::vector<int> f(n);
  for (int i = 0; i < n; ++i) f[i] = d(rng);
  return f;
}

inline std::vector<int> random_convex_set(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, n);
  int a = d(rng), b = d(rng);
  if (a > b) std::swap(a, b);
  std::vector<int> out;
  for (int e = a; e < b; ++e) out.push_back(e);
  return out;
}

inline std::vector<bool> random_subset(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution d(0.5);
  std::vector<bool> out(n);
  for (int i = 0; i < n; ++i) out[i] = d(rng);
  return out;
}

}  // namespace testutil
