#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/constructions.hpp"
#include "sumfree/numset.hpp"

namespace sumfree {

enum class SearchMode { Exhaustive, Stochastic };

std::string to_string(SearchMode mode);

struct SearchConfig {
  std::size_t set_size = 0;
  Element max_element = 0;
  SearchMode mode = SearchMode::Stochastic;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 1;
  unsigned workers = 1;
};

/// At most this many tied sets are kept, the smallest in set order.
inline constexpr std::size_t kMaxReportedSets = 64;
inline constexpr std::uint64_t kDefaultSearchCeiling = 10'000'000;
/// Stochastic work is cut into slots of this many steps, each with its own
/// counter-derived seed, so the split across workers never changes the result.
inline constexpr std::uint64_t kStepsPerSlot = 10'000;
inline constexpr std::uint64_t kStagnationWindow = 1'000;

struct SearchReport {
  SearchConfig config;
  ExactRatio best_delta;
  /// Sorted, distinct, at most kMaxReportedSets.
  std::vector<NumSet> best_sets;
  /// Exhaustive mode only: how many subsets attain best_delta.
  std::optional<std::uint64_t> best_count;
  std::uint64_t evaluated = 0;   // delta computations
};

/// Every set_size-subset of {1..max_element}. Throws std::invalid_argument for
/// set_size > max_element or set_size == 0, LimitError when the subset count
/// exceeds `ceiling`.
SearchReport exhaustive_search(std::size_t set_size, Element max_element,
                               std::uint64_t ceiling = kDefaultSearchCeiling);

/// Random restarts with swap moves; a move is kept when delta does not grow.
/// Throws std::invalid_argument unless set_size >= 3, max_element >= set_size
/// and iterations >= 1.
SearchReport stochastic_search(const SearchConfig& config);

/// Dispatches on config.mode.
SearchReport run_search(const SearchConfig& config);

std::string format_report(const SearchReport& report);

}  // namespace sumfree
