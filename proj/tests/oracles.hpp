#pragma once

// Deliberately naive reference implementations the real code is checked against.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sumfree/numset.hpp"

namespace oracle {

using sumfree::Element;
using sumfree::NumSet;

inline bool sum_free(const std::vector<Element>& v) {
  for (Element x : v)
    for (Element y : v)
      if (std::find(v.begin(), v.end(), x + y) != v.end()) return false;
  return true;
}

inline std::vector<sumfree::SumTriple> triples(const NumSet& s) {
  std::vector<sumfree::SumTriple> out;
  for (Element x : s)
    for (Element y : s)
      if (x <= y && s.contains(x + y)) out.push_back({x, y, x + y});
  std::sort(out.begin(), out.end());
  return out;
}

// Largest sum-free subset by walking all 2^n subsets.
inline std::size_t max_sum_free(const NumSet& s) {
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<Element> pick;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1U) pick.push_back(s[i]);
    if (pick.size() > best && sum_free(pick)) best = pick.size();
  }
  return best;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::vector<std::vector<std::uint64_t>> row(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (unsigned i = 0; i <= n; ++i) {
    row[i][0] = 1;
    for (unsigned j = 1; j <= i; ++j) row[i][j] = row[i - 1][j - 1] + (j <= i - 1 ? row[i - 1][j] : 0);
  }
  return row[n][k];
}

inline NumSet random_set(std::mt19937_64& rng, std::size_t max_size, Element max_value, std::size_t min_size = 1) {
  std::uniform_int_distribution<std::size_t> size(min_size, max_size);
  std::uniform_int_distribution<Element> value(1, max_value);
  const std::size_t want = size(rng);
  std::vector<Element> v;
  while (v.size() < want) {
    const Element e = value(rng);
    if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(e);
  }
  return NumSet::from(v);
}

}  // namespace oracle
