#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/numset.hpp"

namespace sumfree {

enum class Method { Exhaustive, BranchBound };

std::string to_string(Method m);

/// Per-size tally kept by the exhaustive solver.
struct SizeTally {
  std::size_t size = 0;
  std::uint64_t examined = 0;  // subsets of this size tested
  std::uint64_t sum_free = 0;  // how many of them were sum-free
};

struct SolveReport {
  std::size_t optimum = 0;
  NumSet witness;
  Method method = Method::BranchBound;
  /// Subsets tested (exhaustive) or search-tree nodes expanded (branch and bound).
  std::uint64_t work = 0;
  std::chrono::duration<double> wall_time{};
  /// Exhaustive only, in the order the sizes were visited.
  std::vector<SizeTally> tallies;
  /// Set when a size cap was given and a sum-free subset of that size
  /// exists: the true optimum may then be larger than `optimum`.
  bool capped = false;
};

/// Inputs above this size are refused by the exhaustive solver unless forced.
inline constexpr std::size_t kExhaustiveSizeGuard = 30;
/// Hard ceiling even when forced (subsets are 64-bit masks).
inline constexpr std::size_t kExhaustiveHardLimit = 63;

struct ExhaustiveOptions {
  /// Start the descending scan at this size instead of |A|.
  std::optional<std::size_t> size_cap;
  /// Stop a size at its first sum-free subset instead of scanning it fully.
  bool early_exit = false;
  /// Lift kExhaustiveSizeGuard.
  bool force = false;
};

/// Scans subsets by descending size; the first size holding a sum-free subset
/// is the optimum. Sizes are scanned completely unless `early_exit` is set.
/// Throws LimitError past the size guard, std::invalid_argument for a cap
/// larger than |A|.
SolveReport max_sum_free_exhaustive(const NumSet& set, const ExhaustiveOptions& options = {});

/// Depth-first include/exclude search over elements in descending order.
/// Including x drops every candidate y for which chosen + {x, y} is no longer
/// sum-free; a node is pruned when |chosen| + |candidates| <= best so far.
/// The witness is the first optimum met, include branch first.
SolveReport max_sum_free_branch_bound(const NumSet& set);

struct SizeQuery {
  bool exists = false;
  std::optional<NumSet> witness;
};

/// Whether a sum-free subset of exactly k elements exists. The witness is the
/// lexicographically smallest one (ascending listing). Throws
/// std::invalid_argument unless 0 <= k <= |A|.
SizeQuery exists_sum_free_of_size(const NumSet& set, std::size_t k);

/// Exact binomial coefficient for 0 <= k <= n <= 64.
std::uint64_t count_k_subsets(unsigned n, unsigned k);

/// exists(claimed) and not exists(claimed + 1).
bool verify_max_size(const NumSet& set, std::size_t claimed);

/// Structured "key: value" report.
std::string format_report(const SolveReport& report);

}  // namespace sumfree
