#include "sumfree/solver.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "sumfree/error.hpp"

namespace sumfree {

std::string to_string(Method m) { return m == Method::Exhaustive ? "Exhaustive" : "BranchBound"; }

namespace {

using Clock = std::chrono::steady_clock;

// Each triple of the input as a mask over element indices.
std::vector<std::uint64_t> triple_masks(const NumSet& set) {
  std::vector<std::uint64_t> masks;
  const auto elems = set.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      const Element z = elems[i] + elems[j];
      if (!set.contains(z)) continue;
      const auto k = static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), z) - elems.begin());
      masks.push_back((std::uint64_t{1} << i) | (std::uint64_t{1} << j) | (std::uint64_t{1} << k));
    }
  }
  return masks;
}

bool mask_is_sum_free(std::uint64_t subset, const std::vector<std::uint64_t>& triples) {
  for (std::uint64_t t : triples) {
    if ((subset & t) == t) return false;
  }
  return true;
}

NumSet subset_from_mask(const NumSet& set, std::uint64_t mask) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (mask >> i & 1U) out.push_back(set[i]);
  }
  return NumSet::from(out, set.max_value().value_or(0));
}

// Next k-subset mask in colex order (Gosper).
std::uint64_t next_combination(std::uint64_t m) {
  const std::uint64_t low = m & (~m + 1);
  const std::uint64_t ripple = m + low;
  return (((ripple ^ m) >> 2) / low) | ripple;
}

// Growing sum-free selection with O(1) membership over values.
class Selection {
 public:
  explicit Selection(Element max_value) : bits_(max_value / 64 + 1, 0) {}

  bool contains(Element v) const noexcept {
    return v / 64 < bits_.size() && (bits_[v / 64] >> (v % 64) & 1U) != 0;
  }

  void push(Element v) {
    bits_[v / 64] |= std::uint64_t{1} << (v % 64);
    order_.push_back(v);
  }

  void pop() {
    const Element v = order_.back();
    bits_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    order_.pop_back();
  }

  std::size_t size() const noexcept { return order_.size(); }
  const std::vector<Element>& values() const noexcept { return order_; }

  /// Whether `y` may join once `x` (already pushed) is in. Triples that avoid
  /// x were screened when their other members were pushed.
  bool compatible(Element y, Element x) const noexcept {
    if (contains(x + y)) return false;
    if (y > x) return !contains(y - x);
    return !contains(x - y) && x != 2 * y;
  }

 private:
  std::vector<std::uint64_t> bits_;
  std::vector<Element> order_;
};

std::vector<Element> filter_candidates(const Selection& sel, Element x, std::span<const Element> rest) {
  std::vector<Element> out;
  out.reserve(rest.size());
  for (Element y : rest) {
    if (sel.compatible(y, x)) out.push_back(y);
  }
  return out;
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const NumSet& set) : selection_(set.max_value().value_or(0)) {}

  void run(std::span<const Element> candidates) {
    if (selection_.size() > best_size_ || !have_best_) {
      best_size_ = selection_.size();
      best_ = selection_.values();
      have_best_ = true;
    }
    if (selection_.size() + candidates.size() <= best_size_) return;
    ++work_;
    const Element x = candidates.front();
    const auto rest = candidates.subspan(1);
    selection_.push(x);
    const auto kept = filter_candidates(selection_, x, rest);
    run(kept);
    selection_.pop();
    run(rest);
  }

  std::size_t best_size() const noexcept { return best_size_; }
  const std::vector<Element>& best() const noexcept { return best_; }
  std::uint64_t work() const noexcept { return work_; }

 private:
  Selection selection_;
  std::vector<Element> best_;
  std::size_t best_size_ = 0;
  bool have_best_ = false;
  std::uint64_t work_ = 0;
};

class FixedSizeSearch {
 public:
  FixedSizeSearch(const NumSet& set, std::size_t target)
      : selection_(set.max_value().value_or(0)), target_(target) {}

  bool run(std::span<const Element> candidates) {
    if (selection_.size() == target_) return true;
    if (selection_.size() + candidates.size() < target_) return false;
    const Element x = candidates.front();
    const auto rest = candidates.subspan(1);
    selection_.push(x);
    if (run(filter_candidates(selection_, x, rest))) return true;
    selection_.pop();
    return run(rest);
  }

  const std::vector<Element>& chosen() const noexcept { return selection_.values(); }

 private:
  Selection selection_;
  std::size_t target_;
};

}  // namespace

SolveReport max_sum_free_exhaustive(const NumSet& set, const ExhaustiveOptions& options) {
  const std::size_t n = set.size();
  if (n > kExhaustiveHardLimit) {
    throw LimitError("exhaustive solver: |A| = " + std::to_string(n) + " exceeds the hard limit of " +
                     std::to_string(kExhaustiveHardLimit));
  }
  if (n > kExhaustiveSizeGuard && !options.force) {
    throw LimitError("exhaustive solver: |A| = " + std::to_string(n) + " exceeds kExhaustiveSizeGuard = " +
                     std::to_string(kExhaustiveSizeGuard) + " (pass force to override)");
  }
  if (options.size_cap && *options.size_cap > n) {
    throw std::invalid_argument("size cap " + std::to_string(*options.size_cap) + " exceeds |A| = " +
                                std::to_string(n));
  }

  const auto start = Clock::now();
  const auto triples = triple_masks(set);
  SolveReport report;
  report.method = Method::Exhaustive;

  const std::size_t top = options.size_cap.value_or(n);
  for (std::size_t k = top + 1; k-- > 0;) {
    SizeTally tally{k, 0, 0};
    std::optional<std::uint64_t> witness;
    const std::uint64_t limit = n == 64 ? 0 : std::uint64_t{1} << n;
    std::uint64_t mask = k == 0 ? 0 : (k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1);
    while (true) {
      ++tally.examined;
      if (mask_is_sum_free(mask, triples)) {
        ++tally.sum_free;
        if (!witness) witness = mask;
        if (options.early_exit) break;
      }
      if (k == 0 || k == n) break;
      mask = next_combination(mask);
      if (mask >= limit) break;
    }
    report.work += tally.examined;
    report.tallies.push_back(tally);
    if (witness) {
      report.optimum = k;
      report.witness = subset_from_mask(set, *witness);
      report.capped = options.size_cap.has_value() && k == *options.size_cap && k < n;
      break;
    }
  }
  report.wall_time = Clock::now() - start;
  return report;
}

SolveReport max_sum_free_branch_bound(const NumSet& set) {
  const auto start = Clock::now();
  std::vector<Element> order(set.begin(), set.end());
  std::reverse(order.begin(), order.end());

  BranchAndBound search(set);
  search.run(order);

  SolveReport report;
  report.method = Method::BranchBound;
  report.optimum = search.best_size();
  report.witness = NumSet::from(search.best(), set.max_value().value_or(0));
  report.work = search.work();
  report.wall_time = Clock::now() - start;
  return report;
}

SizeQuery exists_sum_free_of_size(const NumSet& set, std::size_t k) {
  if (k > set.size()) {
    throw std::invalid_argument("k = " + std::to_string(k) + " is outside 0.." + std::to_string(set.size()));
  }
  FixedSizeSearch search(set, k);
  const std::vector<Element> order(set.begin(), set.end());
  if (!search.run(order)) return {};
  return {true, NumSet::from(search.chosen(), set.max_value().value_or(0))};
}

std::uint64_t count_k_subsets(unsigned n, unsigned k) {
  if (n > 64 || k > n) {
    throw std::invalid_argument("count_k_subsets needs 0 <= k <= n <= 64, got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k));
  }
  __extension__ unsigned __int128 r = 1;
  // After step i, r = C(n - k + i, i): each division is exact.
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

bool verify_max_size(const NumSet& set, std::size_t claimed) {
  if (claimed > set.size()) {
    throw std::invalid_argument("claimed size " + std::to_string(claimed) + " exceeds |A| = " +
                                std::to_string(set.size()));
  }
  if (!exists_sum_free_of_size(set, claimed).exists) return false;
  return claimed == set.size() || !exists_sum_free_of_size(set, claimed + 1).exists;
}

std::string format_report(const SolveReport& report) {
  std::ostringstream out;
  out << "method: " << to_string(report.method) << '\n';
  out << "optimum: " << report.optimum << '\n';
  out << "witness: " << format_set(report.witness) << '\n';
  out << "work: " << report.work << '\n';
  if (report.capped) out << "capped: true\n";
  for (const SizeTally& t : report.tallies) {
    out << "tally: size=" << t.size << " examined=" << t.examined << " sum_free=" << t.sum_free << '\n';
  }
  out << "wall_time_ms: " << std::fixed << std::setprecision(3) << report.wall_time.count() * 1e3 << '\n';
  return out.str();
}

}  // namespace sumfree
