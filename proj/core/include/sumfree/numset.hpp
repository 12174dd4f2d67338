#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumfree {

using Element = std::uint32_t;

/// Largest element a NumSet may hold unless the caller raises the cap.
inline constexpr Element kDefaultValueCap = 1024;

/// A finite set of positive integers.
///
/// Elements are kept strictly increasing alongside a dense membership bitmap
/// sized to the largest element, so `contains` is O(1). Values are immutable
/// once built; every operation that "changes" a set returns a new one.
class NumSet {
 public:
  NumSet() = default;
  NumSet(std::initializer_list<Element> elements);

  /// Sorts and deduplicates. Throws std::invalid_argument on 0 and
  /// LimitError when an element exceeds `value_cap`.
  static NumSet from(std::span<const Element> elements, Element value_cap = kDefaultValueCap);

  bool contains(Element value) const noexcept {
    return value < bits_.size() * 64 && (bits_[value / 64] >> (value % 64) & 1U) != 0;
  }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  /// Largest element; nullopt for the empty set.
  std::optional<Element> max_value() const noexcept;

  std::span<const Element> elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  Element operator[](std::size_t i) const { return elements_[i]; }

  bool is_subset_of(const NumSet& other) const noexcept;

  friend bool operator==(const NumSet& a, const NumSet& b) { return a.elements_ == b.elements_; }
  /// Lexicographic on the ascending element sequence.
  friend std::strong_ordering operator<=>(const NumSet& a, const NumSet& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<Element> elements_;
  std::vector<std::uint64_t> bits_;
};

NumSet set_union(const NumSet& a, const NumSet& b);
NumSet set_intersection(const NumSet& a, const NumSet& b);
NumSet set_difference(const NumSet& a, const NumSet& b);

/// Parses decimal integers separated by commas and/or whitespace, optionally
/// wrapped in one pair of braces; "{}" is the empty set, blank text is an
/// error. Throws ParseError naming the bad token.
NumSet parse_set(std::string_view text, Element value_cap = kDefaultValueCap);

/// Canonical form: "{a, b, c}".
std::string format_set(const NumSet& set);

/// A witness x + y = z with x <= y inside some set.
struct SumTriple {
  Element x = 0;
  Element y = 0;
  Element z = 0;

  friend auto operator<=>(const SumTriple&, const SumTriple&) = default;
};

/// "x+y=z"
std::string format_triple(const SumTriple& t);

/// Every triple of `set`, ordered lexicographically on (x, y).
std::vector<SumTriple> enumerate_triples(const NumSet& set);

/// First triple in enumeration order, if any.
std::optional<SumTriple> first_triple(const NumSet& set);

/// True iff `set` has no x + y = z (x = y allowed).
bool is_sum_free(const NumSet& set);

// --- Doubling-chain decomposition of the 28-element set ---------------------

struct Column {
  int index = 0;               // 1-based
  std::vector<Element> chain;  // each entry doubles the previous one
};

class ColumnTable {
 public:
  static constexpr int kColumnCount = 13;

  explicit ColumnTable(std::array<Column, kColumnCount> columns);

  const Column& column(int index) const { return columns_.at(static_cast<std::size_t>(index - 1)); }
  std::span<const Column> columns() const noexcept { return columns_; }

  /// Column holding `value`, or 0 if none does.
  int column_of(Element value) const noexcept;

  /// Union of all columns.
  NumSet universe() const;
  /// Union of columns 1-3.
  NumSet head() const;

 private:
  std::array<Column, kColumnCount> columns_;
};

/// The 28-element set whose largest sum-free subset has 11 elements.
NumSet record_set();

/// Its 13-column layout: three 3-chains, nine 2-chains, and {24}.
const ColumnTable& record_column_table();

/// All sum-free subsets of one column's chain, ordered by size then
/// lexicographically.
std::vector<NumSet> column_sum_free_subsets(const Column& column);

/// Exhaustively checks, per column, that a 2-chain holds no sum-free pair and
/// that a 3-chain's only sum-free pair is {first, last} with no sum-free
/// triple. Throws std::invalid_argument if the table breaks its invariants.
bool verify_column_lemmas(const ColumnTable& table);

}  // namespace sumfree
