#include "sumfree/constructions.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "sumfree/error.hpp"
#include "sumfree/solver.hpp"

namespace sumfree {

ExactRatio::ExactRatio(std::uint64_t numerator, std::uint64_t denominator)
    : num_(numerator), den_(denominator) {
  if (denominator == 0) throw std::invalid_argument("ratio with zero denominator");
}

ExactRatio ExactRatio::reduced() const {
  const std::uint64_t g = std::gcd(num_, den_);
  return g == 0 ? *this : ExactRatio(num_ / g, den_ / g);
}

std::weak_ordering operator<=>(const ExactRatio& a, const ExactRatio& b) noexcept {
  __extension__ typedef unsigned __int128 Wide;
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  if (lhs < rhs) return std::weak_ordering::less;
  if (lhs > rhs) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::string to_string(const ExactRatio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ExactRatio delta(const NumSet& set) {
  if (set.empty()) throw UndefinedConstant("the sum-free subset constant of the empty set is undefined");
  return {max_sum_free_branch_bound(set).optimum, set.size()};
}

NumSet dilate(const NumSet& set, Element factor, Element value_cap) {
  if (factor == 0) throw std::invalid_argument("dilation factor must be positive");
  if (set.empty()) return {};
  const std::uint64_t top = static_cast<std::uint64_t>(*set.max_value()) * factor;
  if (top > value_cap) {
    throw LimitError("dilation by " + std::to_string(factor) + " reaches " + std::to_string(top) +
                     ", above value cap " + std::to_string(value_cap));
  }
  std::vector<Element> out;
  out.reserve(set.size());
  for (Element v : set) out.push_back(v * factor);
  return NumSet::from(out, value_cap);
}

NotDisjoint::NotDisjoint(NumSet intersection)
    : std::invalid_argument("sets are not disjoint; intersection " + format_set(intersection)),
      intersection_(std::move(intersection)) {}

NumSet disjoint_union(const NumSet& a, const NumSet& b) {
  NumSet common = set_intersection(a, b);
  if (!common.empty()) throw NotDisjoint(std::move(common));
  return set_union(a, b);
}

std::span<const NamedSet> named_sets() {
  static const std::array<NamedSet, 4> registry = {
      NamedSet{"erdos1965", {2, 3, 4, 5, 6, 8, 10}, ExactRatio(3, 7),
               "Erdos (1965): the constant 1/3 cannot exceed 3/7"},
      NamedSet{"record28", record_set(), ExactRatio(11, 28),
               "28-element set whose largest sum-free subset has 11 elements"},
      NamedSet{"record28-odd-witness", {1, 3, 5, 7, 9, 11, 13, 15, 17, 25, 27}, ExactRatio(11, 11),
               "odd elements of the 28-element record set; sum-free, so its own constant is 1"},
      NamedSet{"malouf", {1, 2, 3, 4, 5, 6, 8, 9, 10, 18}, ExactRatio(4, 10),
               "set attaining the 4/10 bound attributed to Malouf"},
  };
  return registry;
}

const NamedSet& named_set(std::string_view key) {
  for (const NamedSet& entry : named_sets()) {
    if (entry.key == key) return entry;
  }
  std::string valid;
  for (const NamedSet& entry : named_sets()) {
    if (!valid.empty()) valid += ", ";
    valid += entry.key;
  }
  throw std::out_of_range("unknown named set '" + std::string(key) + "'; valid keys: " + valid);
}

}  // namespace sumfree
