#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace g2forms {

// Sorted strictly-increasing index tuples ("multi-indices") of length k out of
// {0,..,n-1}, enumerated in lexicographic order.  Dimensions are tiny (n <= 8)
// so everything is table-driven.

constexpr int kMaxDim = 8;

constexpr std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

using Index = std::array<int, kMaxDim>;  // first k entries meaningful

// Lexicographic rank of a sorted k-subset of {0..n-1}.
inline int subset_rank(int n, int k, const int* idx) {
  int rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < idx[i]; ++v)
      rank += static_cast<int>(binomial(n - 1 - v, k - 1 - i));
    prev = idx[i];
  }
  return rank;
}

// Inverse of subset_rank.
inline void subset_unrank(int n, int k, int rank, int* idx) {
  int v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      int c = static_cast<int>(binomial(n - 1 - v, k - 1 - i));
      if (rank < c) break;
      rank -= c;
      ++v;
    }
    idx[i] = v++;
  }
}

// Merge two disjoint sorted index sets, returning the permutation sign of the
// shuffle (0 if they intersect).
inline int merge_sign(int ka, const int* a, int kb, const int* b, int* out) {
  int i = 0, j = 0, m = 0;
  int transpositions = 0;
  while (i < ka && j < kb) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out[m++] = a[i++];
    } else {
      // b[j] jumps over the remaining ka - i entries of a
      transpositions += ka - i;
      out[m++] = b[j++];
    }
  }
  while (i < ka) out[m++] = a[i++];
  while (j < kb) out[m++] = b[j++];
  return (transpositions % 2 == 0) ? 1 : -1;
}

}  // namespace g2forms
