#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sumfree/numset.hpp"

namespace sumfree {

/// A non-negative rational kept exactly as given (e.g. 4/10), with its
/// lowest-terms form available on request. Ordering and equality are by
/// value, via cross-multiplication in 128-bit integers.
class ExactRatio {
 public:
  ExactRatio() = default;
  /// Throws std::invalid_argument on a zero denominator.
  ExactRatio(std::uint64_t numerator, std::uint64_t denominator);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  ExactRatio reduced() const;

  /// Same numerator and denominator, not just the same value.
  bool same_representation(const ExactRatio& other) const noexcept {
    return num_ == other.num_ && den_ == other.den_;
  }

  friend std::weak_ordering operator<=>(const ExactRatio& a, const ExactRatio& b) noexcept;
  friend bool operator==(const ExactRatio& a, const ExactRatio& b) noexcept {
    return (a <=> b) == std::weak_ordering::equivalent;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// "n/d" as stored.
std::string to_string(const ExactRatio& r);

/// Raised when the sum-free constant is requested for the empty set.
class UndefinedConstant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// l/|A| with l the exact optimum (branch and bound).
ExactRatio delta(const NumSet& set);

/// {d·a : a in A}. Throws std::invalid_argument for d = 0 and LimitError when
/// d·max(A) passes `value_cap`.
NumSet dilate(const NumSet& set, Element factor, Element value_cap = kDefaultValueCap);

/// Thrown by disjoint_union; carries the offending intersection.
class NotDisjoint : public std::invalid_argument {
 public:
  explicit NotDisjoint(NumSet intersection);
  const NumSet& intersection() const noexcept { return intersection_; }

 private:
  NumSet intersection_;
};

NumSet disjoint_union(const NumSet& a, const NumSet& b);

struct NamedSet {
  std::string key;
  NumSet set;
  ExactRatio expected_delta;
  std::string citation;
};

/// Every registered set, in key order.
std::span<const NamedSet> named_sets();

/// Throws std::out_of_range listing the valid keys.
const NamedSet& named_set(std::string_view key);

/// Alon and Kleitman's 12/29 has no published witness set, so it is kept as a
/// reference constant only.
inline constexpr std::uint64_t kAlonKleitmanNumerator = 12;
inline constexpr std::uint64_t kAlonKleitmanDenominator = 29;

}  // namespace sumfree
